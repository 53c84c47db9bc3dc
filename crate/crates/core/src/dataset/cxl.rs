//! CXL index files: `<print file="..." class="..."/>` entries.

use roxmltree::{Document, ParsingOptions};

use crate::error::DatasetError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexEntry {
    pub file: String,
    pub class: String,
}

pub fn parse_cxl(content: &str) -> Result<Vec<IndexEntry>, DatasetError> {
    let options = ParsingOptions {
        allow_dtd: true,
        ..ParsingOptions::default()
    };
    let doc = Document::parse_with_options(content, options)
        .map_err(|e| DatasetError::Xml(e.to_string()))?;
    doc.descendants()
        .filter(|n| n.has_tag_name("print"))
        .map(|n| {
            Ok(IndexEntry {
                file: n
                    .attribute("file")
                    .ok_or(DatasetError::IndexEntry("file"))?
                    .to_string(),
                class: n
                    .attribute("class")
                    .ok_or(DatasetError::IndexEntry("class"))?
                    .to_string(),
            })
        })
        .collect()
}

pub fn write_cxl(entries: &[IndexEntry]) -> String {
    let mut out = String::from("<?xml version=\"1.0\"?>\n<GraphCollection>\n<fingerprints>\n");
    for e in entries {
        out.push_str(&format!(
            "<print file=\"{}\" class=\"{}\"/>\n",
            e.file, e.class
        ));
    }
    out.push_str("</fingerprints>\n</GraphCollection>\n");
    out
}
