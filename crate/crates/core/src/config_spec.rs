//! Textual forms of a [`NeighborhoodConfig`].
//!
//! Three forms are accepted:
//!
//! * a decimal mask, `0`–`255`;
//! * eight `0`/`1` characters giving `x_0` through `x_7` (E, NE, N, NW, W, SW, S, SE);
//! * a 3×3 glyph block with `#` for black, `.` for white and `x` for the
//!   center, rows top to bottom, separated by newlines or `/`
//!   (for example `.#./#x#/...`).

use crate::error::{Error, Result};
use crate::grid::{NeighborhoodConfig, NEIGHBOR_OFFSETS};

fn parse_error(input: &str, reason: impl Into<String>) -> Error {
    Error::ConfigParse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

pub fn parse_config(input: &str) -> Result<NeighborhoodConfig> {
    let trimmed = input.trim();
    if trimmed.len() == 8 && trimmed.bytes().all(|b| b == b'0' || b == b'1') {
        let mask = trimmed
            .bytes()
            .enumerate()
            .fold(0u8, |acc, (i, b)| acc | (u8::from(b == b'1') << i));
        return Ok(NeighborhoodConfig::new(mask));
    }
    if !trimmed.is_empty() && trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return trimmed
            .parse::<u8>()
            .map(NeighborhoodConfig::new)
            .map_err(|_| parse_error(input, "decimal mask must be in 0..=255"));
    }
    parse_glyph(input)
}

fn parse_glyph(input: &str) -> Result<NeighborhoodConfig> {
    let rows: Vec<&str> = input
        .split(['\n', '/'])
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .collect();
    if rows.len() != 3 || rows.iter().any(|r| r.chars().count() != 3) {
        return Err(parse_error(
            input,
            "expected a decimal mask, 8 binary digits, or a 3x3 block of '.#x'",
        ));
    }
    let grid: Vec<Vec<char>> = rows.iter().map(|r| r.chars().collect()).collect();
    if grid[1][1] != 'x' {
        return Err(parse_error(input, "center of the 3x3 block must be 'x'"));
    }
    let mut mask = 0u8;
    for (i, &(dc, dr)) in NEIGHBOR_OFFSETS.iter().enumerate() {
        match grid[(1 + dr) as usize][(1 + dc) as usize] {
            '#' => mask |= 1 << i,
            '.' => {}
            other => {
                return Err(parse_error(input, format!("unexpected glyph {other:?}")));
            }
        }
    }
    Ok(NeighborhoodConfig::new(mask))
}

/// Eight `0`/`1` characters, `x_0` first.
pub fn format_bits(c: NeighborhoodConfig) -> String {
    (0..8)
        .map(|i| if c.is_black(i) { '1' } else { '0' })
        .collect()
}

/// Three lines of `.#` with `x` at the center.
pub fn format_glyph(c: NeighborhoodConfig) -> String {
    let mut grid = [['.'; 3]; 3];
    grid[1][1] = 'x';
    for (i, &(dc, dr)) in NEIGHBOR_OFFSETS.iter().enumerate() {
        if c.is_black(i) {
            grid[(1 + dr) as usize][(1 + dc) as usize] = '#';
        }
    }
    grid.iter()
        .map(|row| row.iter().collect::<String>())
        .collect::<Vec<_>>()
        .join("\n")
}
