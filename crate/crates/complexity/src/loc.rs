//! Line classification: every physical line is exactly one of code,
//! comment, or blank.
//!
//! Blank lines are whitespace-only; comment lines lie entirely within `//`
//! or `/* */` comments; anything else (including mixed code+comment lines)
//! counts as code. Both in-scope languages share this comment syntax.
//!
//! Provenance directives (`#line N "file"`) count as code by default; with
//! `exclude_directives` they are reclassified as comments so the code count
//! drops while the partition law still holds. Trailing `// @srcline` markers
//! share a statement's line and never affect its class.

use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Language {
    Chapel,
    Target,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocCount {
    pub file: PathBuf,
    pub code_lines: usize,
    pub comment_lines: usize,
    pub blank_lines: usize,
}

impl LocCount {
    pub fn total(&self) -> usize {
        self.code_lines + self.comment_lines + self.blank_lines
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LineClass {
    Code,
    Comment,
    Blank,
}

fn is_line_directive(line: &str) -> bool {
    line.trim_start().starts_with("#line ")
}

fn classify_lines(text: &str, exclude_directives: bool) -> Vec<LineClass> {
    let mut classes = Vec::new();
    let mut in_block_comment = false;
    for line in text.lines() {
        let mut has_code = false;
        let mut has_comment = in_block_comment;
        let bytes: Vec<char> = line.chars().collect();
        let mut i = 0;
        let mut in_string = false;
        while i < bytes.len() {
            let c = bytes[i];
            let next = bytes.get(i + 1).copied();
            if in_block_comment {
                has_comment = true;
                if c == '*' && next == Some('/') {
                    in_block_comment = false;
                    i += 2;
                    continue;
                }
                i += 1;
            } else if in_string {
                has_code = true;
                if c == '\\' {
                    i += 2;
                } else {
                    if c == '"' {
                        in_string = false;
                    }
                    i += 1;
                }
            } else if c == '"' {
                has_code = true;
                in_string = true;
                i += 1;
            } else if c == '/' && next == Some('/') {
                has_comment = true;
                break; // rest of line is comment
            } else if c == '/' && next == Some('*') {
                has_comment = true;
                in_block_comment = true;
                i += 2;
            } else if c.is_whitespace() {
                i += 1;
            } else {
                has_code = true;
                i += 1;
            }
        }
        let class = if has_code {
            if exclude_directives && is_line_directive(line) {
                LineClass::Comment
            } else {
                LineClass::Code
            }
        } else if has_comment {
            LineClass::Comment
        } else {
            LineClass::Blank
        };
        classes.push(class);
    }
    classes
}

pub fn count_loc_str(text: &str, file: &Path, exclude_directives: bool) -> LocCount {
    let mut count = LocCount {
        file: file.to_path_buf(),
        code_lines: 0,
        comment_lines: 0,
        blank_lines: 0,
    };
    for class in classify_lines(text, exclude_directives) {
        match class {
            LineClass::Code => count.code_lines += 1,
            LineClass::Comment => count.comment_lines += 1,
            LineClass::Blank => count.blank_lines += 1,
        }
    }
    count
}

pub fn count_loc(
    file: &Path,
    _language: Language,
    exclude_directives: bool,
) -> std::io::Result<LocCount> {
    let text = std::fs::read_to_string(file)?;
    Ok(count_loc_str(&text, file, exclude_directives))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(text: &str) -> (usize, usize, usize) {
        let c = count_loc_str(text, Path::new("t"), false);
        (c.code_lines, c.comment_lines, c.blank_lines)
    }

    #[test]
    fn basic_partition() {
        let text = "var a = 1;\n// note\nvar b = 2;\n\n/* c */\nvar d = 3;\n";
        assert_eq!(counts(text), (3, 2, 1));
    }

    #[test]
    fn comment_only_file_has_zero_code() {
        let text = "// a\n/* b\n   c */\n";
        assert_eq!(counts(text), (0, 3, 0));
    }

    #[test]
    fn mixed_line_counts_as_code() {
        assert_eq!(counts("var a = 1; // trailing\n"), (1, 0, 0));
        assert_eq!(counts("/* lead */ var a = 1;\n"), (1, 0, 0));
    }

    #[test]
    fn string_containing_slashes_is_code() {
        assert_eq!(counts("writeln(\"// not a comment\");\n"), (1, 0, 0));
    }

    #[test]
    fn listing_fragment_with_directives() {
        // two directives + two statements → 4 code lines
        let text = "#line 8 \"expr.chpl\"\nauto a = 1 + 1;\n#line 9 \"expr.chpl\"\na = a + 1;\n";
        assert_eq!(counts(text), (4, 0, 0));
    }

    #[test]
    fn directive_exclusion_preserves_partition() {
        let text = "#line 8 \"expr.chpl\"\nauto a = 1 + 1;\n";
        let c = count_loc_str(text, Path::new("t"), true);
        assert_eq!((c.code_lines, c.comment_lines, c.blank_lines), (1, 1, 0));
        assert_eq!(c.total(), 2);
    }

    #[test]
    fn partition_law_over_assorted_inputs() {
        for text in [
            "",
            "\n\n",
            "a\n/* x\ny */ b\n",
            "var s = \"/*\"; // tricky\n",
            "/* unterminated\nstill comment\n",
        ] {
            let c = count_loc_str(text, Path::new("t"), false);
            assert_eq!(c.total(), text.lines().count(), "{text:?}");
        }
    }
}
