//! Minimal CHAT transcript parser.
//!
//! Supported subset: participant utterance tiers (`*PAR:` by default,
//! with tab continuations), skipping of header (`@`) and dependent
//! (`%`) tiers, and removal of in-utterance codes: `[...]` groups,
//! `&`-prefixed fragments, `+`-prefixed markers and angle-bracket
//! retrace delimiters. Full CLAN compatibility is a non-goal.

use crate::error::{Error, Result};
use crate::preprocess::{RawTranscript, SourceFormat};

/// Options for [`parse_chat`].
#[derive(Debug, Clone)]
pub struct ChatOptions {
    /// Speaker code of the tier to extract, without the `*` sigil.
    pub participant: String,
}

impl Default for ChatOptions {
    fn default() -> Self {
        ChatOptions {
            participant: "PAR".to_string(),
        }
    }
}

/// Parse a CHAT file, extracting the participant utterances as
/// sentences.
///
/// `path` is used only for error diagnostics; `id` and `label` are
/// supplied by the dataset manifest.
pub fn parse_chat(
    bytes: &[u8],
    path: &str,
    id: &str,
    label: &str,
    opts: &ChatOptions,
) -> Result<RawTranscript> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Format {
        path: path.to_string(),
        line: 0,
        message: format!("not valid UTF-8: {e}"),
    })?;

    let marker = format!("*{}:", opts.participant);
    let mut sentences: Vec<String> = Vec::new();
    let mut in_participant_tier = false;

    for line in text.lines() {
        if let Some(rest) = line.strip_prefix(&marker) {
            let cleaned = clean_utterance(rest);
            if !cleaned.is_empty() {
                sentences.push(cleaned);
            }
            in_participant_tier = true;
        } else if line.starts_with('*') || line.starts_with('@') || line.starts_with('%') {
            in_participant_tier = false;
        } else if in_participant_tier && line.starts_with(['\t', ' ']) {
            // tab-wrapped continuation of the previous utterance
            let cleaned = clean_utterance(line);
            if let (Some(last), false) = (sentences.last_mut(), cleaned.is_empty()) {
                last.push(' ');
                last.push_str(&cleaned);
            }
        } else {
            in_participant_tier = false;
        }
    }

    if sentences.is_empty() {
        return Err(Error::Format {
            path: path.to_string(),
            line: 0,
            message: format!("no participant tier `{marker}` found"),
        });
    }

    Ok(RawTranscript {
        id: id.to_string(),
        label: label.to_string(),
        sentences,
        source_format: SourceFormat::Chat,
    })
}

/// Strip CHAT codes from one utterance, keeping the spoken words.
fn clean_utterance(raw: &str) -> String {
    // drop bracketed code groups and NAK-delimited timestamps first;
    // both may contain spaces or digits
    let mut no_brackets = String::with_capacity(raw.len());
    let mut depth = 0usize;
    let mut in_timestamp = false;
    for c in raw.chars() {
        match c {
            '\u{15}' => in_timestamp = !in_timestamp,
            _ if in_timestamp => {}
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            _ if depth == 0 && !c.is_control() => no_brackets.push(c),
            _ => {}
        }
    }

    no_brackets
        .split_whitespace()
        .filter(|tok| !tok.starts_with('&') && !tok.starts_with('+'))
        .map(|tok| tok.replace(['<', '>', '(', ')'], ""))
        .filter(|tok| !tok.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}
