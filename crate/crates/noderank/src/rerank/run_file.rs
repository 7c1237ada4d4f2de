//! TREC interchange formats: run files and relevance judgments.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::scores::format_score;

/// One ranked result line: `topic Q0 docid rank score tag`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunEntry {
    pub topic_id: String,
    pub doc_id: String,
    pub rank: u32,
    pub score: f64,
    pub tag: String,
}

/// A retrieval run: per-topic ranked result lists.
///
/// Entries are kept sorted by `(topic_id, rank)`. Within each topic the
/// doc ids are unique and ranks run 1..n consistently with descending
/// score.
#[derive(Debug, Clone, PartialEq)]
pub struct RunFile {
    entries: Vec<RunEntry>,
}

impl RunFile {
    /// Validate and organize entries.
    pub fn from_entries(mut entries: Vec<RunEntry>) -> Result<RunFile> {
        entries.sort_by(|a, b| a.topic_id.cmp(&b.topic_id).then(a.rank.cmp(&b.rank)));
        let mut seen: HashMap<(String, String), ()> = HashMap::new();
        for e in &entries {
            if seen
                .insert((e.topic_id.clone(), e.doc_id.clone()), ())
                .is_some()
            {
                return Err(Error::DuplicateDoc {
                    topic: e.topic_id.clone(),
                    doc: e.doc_id.clone(),
                });
            }
            if !e.score.is_finite() {
                return Err(Error::Data(format!(
                    "non-finite score for topic {}, document {}",
                    e.topic_id, e.doc_id
                )));
            }
        }
        let run = RunFile { entries };
        for (topic, group) in run.topics() {
            for (i, e) in group.iter().enumerate() {
                if e.rank as usize != i + 1 {
                    return Err(Error::Data(format!(
                        "topic {topic}: ranks are not 1..n (found rank {} at position {})",
                        e.rank,
                        i + 1
                    )));
                }
                if i > 0 && e.score > group[i - 1].score {
                    return Err(Error::Data(format!(
                        "topic {topic}: scores increase with rank at rank {}",
                        e.rank
                    )));
                }
            }
        }
        Ok(run)
    }

    pub fn entries(&self) -> &[RunEntry] {
        &self.entries
    }

    /// Topic groups in ascending topic-id order.
    pub fn topics(&self) -> impl Iterator<Item = (&str, &[RunEntry])> {
        TopicGroups {
            entries: &self.entries,
            pos: 0,
        }
    }

    pub fn num_topics(&self) -> usize {
        self.topics().count()
    }

    pub fn read(path: impl AsRef<Path>) -> Result<RunFile> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_from(BufReader::new(file), path)
    }

    /// Parse whitespace-separated `topic Q0 docid rank score tag` lines.
    pub fn read_from(reader: impl BufRead, origin: &Path) -> Result<RunFile> {
        let mut entries = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(origin, e))?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let malformed = |message: String| Error::Malformed {
                path: origin.into(),
                line: lineno + 1,
                message,
            };
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let [topic, _q0, doc, rank, score, tag] = fields.as_slice() else {
                return Err(malformed(format!(
                    "expected 6 whitespace-separated fields, found {}",
                    fields.len()
                )));
            };
            let rank: u32 = rank
                .parse()
                .map_err(|_| malformed(format!("unparseable rank {rank:?}")))?;
            let score: f64 = score
                .parse()
                .map_err(|_| malformed(format!("unparseable score {score:?}")))?;
            entries.push(RunEntry {
                topic_id: topic.to_string(),
                doc_id: doc.to_string(),
                rank,
                score,
                tag: tag.to_string(),
            });
        }
        Self::from_entries(entries)
    }

    pub fn write(&self, w: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        for e in &self.entries {
            writeln!(
                w,
                "{} Q0 {} {} {} {}",
                e.topic_id,
                e.doc_id,
                e.rank,
                format_score(e.score),
                e.tag
            )?;
        }
        Ok(())
    }
}

struct TopicGroups<'a> {
    entries: &'a [RunEntry],
    pos: usize,
}

impl<'a> Iterator for TopicGroups<'a> {
    type Item = (&'a str, &'a [RunEntry]);

    fn next(&mut self) -> Option<Self::Item> {
        if self.pos >= self.entries.len() {
            return None;
        }
        let start = self.pos;
        let topic = &self.entries[start].topic_id;
        let mut end = start + 1;
        while end < self.entries.len() && &self.entries[end].topic_id == topic {
            end += 1;
        }
        self.pos = end;
        Some((topic.as_str(), &self.entries[start..end]))
    }
}

/// Graded relevance judgments keyed by (topic, document).
#[derive(Debug, Clone, Default)]
pub struct Qrels {
    topics: HashMap<String, HashMap<String, u32>>,
}

impl Qrels {
    pub fn from_entries(
        entries: impl IntoIterator<Item = (String, String, u32)>,
    ) -> Result<Qrels> {
        let mut topics: HashMap<String, HashMap<String, u32>> = HashMap::new();
        for (topic, doc, relevance) in entries {
            if topics
                .entry(topic.clone())
                .or_default()
                .insert(doc.clone(), relevance)
                .is_some()
            {
                return Err(Error::DuplicateDoc { topic, doc });
            }
        }
        Ok(Qrels { topics })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Qrels> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_from(BufReader::new(file), path)
    }

    /// Parse whitespace-separated `topic 0 docid relevance` lines.
    pub fn read_from(reader: impl BufRead, origin: &Path) -> Result<Qrels> {
        let mut entries = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(origin, e))?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let malformed = |message: String| Error::Malformed {
                path: origin.into(),
                line: lineno + 1,
                message,
            };
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let [topic, _iter, doc, relevance] = fields.as_slice() else {
                return Err(malformed(format!(
                    "expected 4 whitespace-separated fields, found {}",
                    fields.len()
                )));
            };
            let relevance: u32 = relevance
                .parse()
                .map_err(|_| malformed(format!("relevance must be an integer >= 0, got {relevance:?}")))?;
            entries.push((topic.to_string(), doc.to_string(), relevance));
        }
        Self::from_entries(entries)
    }

    pub fn has_topic(&self, topic: &str) -> bool {
        self.topics.contains_key(topic)
    }

    /// Graded relevance of a document; unjudged documents are 0.
    pub fn relevance(&self, topic: &str, doc: &str) -> u32 {
        self.topics
            .get(topic)
            .and_then(|docs| docs.get(doc))
            .copied()
            .unwrap_or(0)
    }

    /// All judged grades for a topic (unspecified order).
    pub fn grades(&self, topic: &str) -> impl Iterator<Item = u32> + '_ {
        self.topics
            .get(topic)
            .into_iter()
            .flat_map(|docs| docs.values().copied())
    }

    /// Number of relevant (grade >= 1) documents for a topic.
    pub fn num_relevant(&self, topic: &str) -> usize {
        self.grades(topic).filter(|&g| g >= 1).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn origin() -> PathBuf {
        PathBuf::from("<test>")
    }

    #[test]
    fn parse_and_write_roundtrip() {
        let text = "\
301 Q0 doc3 1 12.5 bm25
301 Q0 doc1 2 11 bm25
305 Q0 doc2 1 9.25 bm25
";
        let run = RunFile::read_from(text.as_bytes(), &origin()).unwrap();
        assert_eq!(run.num_topics(), 2);
        let mut buf = Vec::new();
        run.write(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), text);
    }

    #[test]
    fn duplicate_doc_in_topic_rejected() {
        let text = "1 Q0 d1 1 2.0 t\n1 Q0 d1 2 1.0 t\n";
        let err = RunFile::read_from(text.as_bytes(), &origin()).unwrap_err();
        assert!(matches!(err, Error::DuplicateDoc { .. }), "{err}");
    }

    #[test]
    fn inconsistent_ranks_rejected() {
        let gap = "1 Q0 d1 1 2.0 t\n1 Q0 d2 3 1.0 t\n";
        assert!(RunFile::read_from(gap.as_bytes(), &origin()).is_err());
        let increasing = "1 Q0 d1 1 2.0 t\n1 Q0 d2 2 5.0 t\n";
        assert!(RunFile::read_from(increasing.as_bytes(), &origin()).is_err());
    }

    #[test]
    fn malformed_line_carries_number() {
        let text = "1 Q0 d1 1 2.0 t\n1 Q0 d2 two 1.0 t\n";
        let err = RunFile::read_from(text.as_bytes(), &origin()).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 2, .. }), "{err}");
    }

    #[test]
    fn qrels_parse_and_lookup() {
        let text = "1 0 d1 2\n1 0 d2 0\n2 0 d1 1\n";
        let q = Qrels::read_from(text.as_bytes(), &origin()).unwrap();
        assert_eq!(q.relevance("1", "d1"), 2);
        assert_eq!(q.relevance("1", "unjudged"), 0);
        assert_eq!(q.num_relevant("1"), 1);
        assert!(q.has_topic("2"));
        assert!(!q.has_topic("9"));
    }

    #[test]
    fn qrels_duplicates_rejected() {
        let text = "1 0 d1 2\n1 0 d1 1\n";
        assert!(matches!(
            Qrels::read_from(text.as_bytes(), &origin()),
            Err(Error::DuplicateDoc { .. })
        ));
        let negative = "1 0 d1 -1\n";
        assert!(Qrels::read_from(negative.as_bytes(), &origin()).is_err());
    }
}
