//! ASCII (`.` free, `#` obstacle) and binary PGM map files.
//!
//! ASCII layout: a `<width> <height>` header line followed by exactly
//! `height` lines of exactly `width` characters. Body line `i` holds row
//! `y = i`.

use std::io::Cursor;
use std::path::Path;

use image::ImageFormat;

use super::{GridMap, MapError};

fn parse_err(line: usize, msg: impl Into<String>) -> MapError {
    MapError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_map(text: &str) -> Result<GridMap, MapError> {
    let mut lines = text.split('\n');
    let header = lines.next().unwrap_or("");
    let mut fields = header.split(' ');
    let mut dim = |name: &str| -> Result<usize, MapError> {
        let tok = fields
            .next()
            .ok_or_else(|| parse_err(1, format!("missing {name} in header")))?;
        let v: usize = tok
            .parse()
            .map_err(|_| parse_err(1, format!("bad {name} '{tok}'")))?;
        if v == 0 {
            return Err(parse_err(1, format!("{name} must be positive")));
        }
        Ok(v)
    };
    let width = dim("width")?;
    let height = dim("height")?;
    if fields.next().is_some() {
        return Err(parse_err(1, "header must be '<width> <height>'"));
    }

    let mut cells = Vec::with_capacity(width * height);
    for y in 0..height {
        let line_no = y + 2;
        let row = lines
            .next()
            .ok_or_else(|| parse_err(line_no, format!("expected {height} rows, found {y}")))?;
        if row.chars().count() != width {
            return Err(parse_err(
                line_no,
                format!(
                    "row has {} characters, expected {width}",
                    row.chars().count()
                ),
            ));
        }
        for (x, ch) in row.chars().enumerate() {
            match ch {
                '.' => cells.push(false),
                '#' => cells.push(true),
                other => {
                    return Err(parse_err(
                        line_no,
                        format!("illegal character {other:?} at column {}", x + 1),
                    ))
                }
            }
        }
    }
    // A single trailing newline after the last row is the only thing allowed.
    match (lines.next(), lines.next()) {
        (None, _) | (Some(""), None) => {}
        _ => return Err(parse_err(height + 2, "trailing content after last row")),
    }
    GridMap::from_cells(width, height, cells)
}

/// Binary PGM (`P5`, 8-bit). Pixel 0 is obstacle, anything else is free.
pub fn parse_pgm(bytes: &[u8]) -> Result<GridMap, MapError> {
    if !bytes.starts_with(b"P5") {
        return Err(parse_err(1, "not a binary PGM (P5) file"));
    }
    let img = image::load(Cursor::new(bytes), ImageFormat::Pnm)
        .map_err(|e| parse_err(1, e.to_string()))?
        .into_luma8();
    let (w, h) = (img.width() as usize, img.height() as usize);
    let cells = img.pixels().map(|p| p.0[0] == 0).collect();
    GridMap::from_cells(w, h, cells)
}

/// Reads either format, sniffing the `P5` magic.
pub fn read_map_file(path: &Path) -> Result<GridMap, MapError> {
    let bytes = std::fs::read(path)?;
    if bytes.starts_with(b"P5") {
        parse_pgm(&bytes)
    } else {
        let text = String::from_utf8(bytes).map_err(|_| parse_err(1, "map is not valid UTF-8"))?;
        parse_map(&text)
    }
}

pub fn write_map_ascii(map: &GridMap) -> String {
    let (w, h) = (map.width(), map.height());
    let mut s = String::with_capacity((w + 1) * (h + 1) + 16);
    s.push_str(&format!("{w} {h}\n"));
    for row in map.cells().chunks(w) {
        s.extend(row.iter().map(|&o| if o { '#' } else { '.' }));
        s.push('\n');
    }
    s
}

pub fn write_map_pgm(map: &GridMap) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", map.width(), map.height()).into_bytes();
    out.extend(map.cells().iter().map(|&o| if o { 0u8 } else { 255u8 }));
    out
}
