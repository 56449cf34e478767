//! Netpbm bitmap (PBM) reading and writing, `P1` and `P4`.
//!
//! PBM bit 1 is black (object), bit 0 is white.

use crate::error::{PbmError, PbmErrorKind};
use crate::grid::BinaryImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbmVariant {
    /// `P1`, ASCII digits.
    Plain,
    /// `P4`, rows packed MSB-first and padded to whole bytes.
    Raw,
}

impl PbmVariant {
    pub fn magic(self) -> &'static str {
        match self {
            PbmVariant::Plain => "P1",
            PbmVariant::Raw => "P4",
        }
    }
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, kind: PbmErrorKind) -> PbmError {
        PbmError {
            offset: self.pos,
            kind,
        }
    }

    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while self
                    .data
                    .get(self.pos)
                    .is_some_and(|&b| b != b'\n' && b != b'\r')
                {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn read_dimension(&mut self) -> Result<usize, PbmError> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(if self.pos >= self.data.len() {
                PbmErrorKind::Truncated
            } else {
                PbmErrorKind::ExpectedNumber
            }));
        }
        let digits = std::str::from_utf8(&self.data[start..self.pos]).expect("ascii digits");
        let value: usize = digits.parse().map_err(|_| PbmError {
            offset: start,
            kind: PbmErrorKind::ExpectedNumber,
        })?;
        if value == 0 {
            return Err(PbmError {
                offset: start,
                kind: PbmErrorKind::NonPositiveDimensions,
            });
        }
        Ok(value)
    }
}

pub fn read_pbm(data: &[u8]) -> Result<BinaryImage, PbmError> {
    let mut cur = Cursor { data, pos: 0 };
    let variant = match data.get(..2) {
        Some(b"P1") => PbmVariant::Plain,
        Some(b"P4") => PbmVariant::Raw,
        Some(other) => {
            return Err(cur.err(PbmErrorKind::UnsupportedMagic(
                String::from_utf8_lossy(other).into_owned(),
            )))
        }
        None => return Err(cur.err(PbmErrorKind::Truncated)),
    };
    cur.pos = 2;
    let width = cur.read_dimension()?;
    let height = cur.read_dimension()?;
    let mut img = BinaryImage::new(width, height).expect("dimensions checked positive");

    match variant {
        PbmVariant::Plain => {
            for row in 0..height {
                for col in 0..width {
                    cur.skip_whitespace_and_comments();
                    let black = match data.get(cur.pos) {
                        Some(b'0') => false,
                        Some(b'1') => true,
                        Some(&b) => return Err(cur.err(PbmErrorKind::UnexpectedByte(b))),
                        None => return Err(cur.err(PbmErrorKind::Truncated)),
                    };
                    cur.pos += 1;
                    img.set((col as i64, row as i64).into(), black);
                }
            }
        }
        PbmVariant::Raw => {
            match data.get(cur.pos) {
                Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
                Some(_) => return Err(cur.err(PbmErrorKind::MissingWhitespace)),
                None => return Err(cur.err(PbmErrorKind::Truncated)),
            }
            let stride = width.div_ceil(8);
            for row in 0..height {
                let start = cur.pos + row * stride;
                let Some(bytes) = data.get(start..start + stride) else {
                    return Err(PbmError {
                        offset: data.len(),
                        kind: PbmErrorKind::Truncated,
                    });
                };
                for col in 0..width {
                    let black = bytes[col / 8] & (0x80 >> (col % 8)) != 0;
                    img.set((col as i64, row as i64).into(), black);
                }
            }
        }
    }
    Ok(img)
}

/// Plain output keeps lines at most 70 characters long.
pub fn write_pbm(img: &BinaryImage, variant: PbmVariant) -> Vec<u8> {
    let (w, h) = (img.width(), img.height());
    let mut out = format!("{}\n{} {}\n", variant.magic(), w, h).into_bytes();
    match variant {
        PbmVariant::Plain => {
            const PER_LINE: usize = 35;
            for row in img.pixels().chunks(w) {
                for chunk in row.chunks(PER_LINE) {
                    let line: Vec<&str> =
                        chunk.iter().map(|&b| if b { "1" } else { "0" }).collect();
                    out.extend_from_slice(line.join(" ").as_bytes());
                    out.push(b'\n');
                }
            }
        }
        PbmVariant::Raw => {
            for row in img.pixels().chunks(w) {
                for chunk in row.chunks(8) {
                    let byte =
                        chunk
                            .iter()
                            .enumerate()
                            .fold(0u8, |acc, (i, &b)| if b { acc | (0x80 >> i) } else { acc });
                    out.push(byte);
                }
            }
        }
    }
    out
}
