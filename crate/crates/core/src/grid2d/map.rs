use std::fs;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("reading map: {0}")]
    Io(#[from] io::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> MapError {
    MapError::Parse { line, msg: msg.into() }
}

/// Occupancy grid. Cell `(x, y)` is column `x` of row `y`; row 0 is the
/// first map line. Anything outside the map counts as blocked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMap {
    width: usize,
    height: usize,
    blocked: Vec<bool>,
    name: String,
}

impl GridMap {
    pub fn new(width: usize, height: usize, name: impl Into<String>) -> Self {
        GridMap {
            width,
            height,
            blocked: vec![false; width * height],
            name: name.into(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_blocked(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            return true;
        }
        self.blocked[y as usize * self.width + x as usize]
    }

    pub fn set_blocked(&mut self, x: usize, y: usize, blocked: bool) {
        assert!(x < self.width && y < self.height, "({x}, {y}) outside the map");
        self.blocked[y * self.width + x] = blocked;
    }

    pub fn blocked_count(&self) -> usize {
        self.blocked.iter().filter(|&&b| b).count()
    }

    /// Whether the `side`×`side` square with minimum corner `(x, y)` lies
    /// inside the map on free cells only.
    pub fn footprint_feasible(&self, x: i64, y: i64, side: usize) -> bool {
        assert!(side >= 1, "footprint side must be >= 1");
        let side = side as i64;
        if x < 0 || y < 0 || x + side > self.width as i64 || y + side > self.height as i64 {
            return false;
        }
        for yy in y..y + side {
            let row = &self.blocked[yy as usize * self.width..][x as usize..(x + side) as usize];
            if row.iter().any(|&b| b) {
                return false;
            }
        }
        true
    }

    /// Each cell becomes a `factor`×`factor` block with the same occupancy.
    pub fn scale(&self, factor: usize) -> GridMap {
        assert!(factor >= 1, "scale factor must be >= 1");
        let mut out = GridMap::new(self.width * factor, self.height * factor, self.name.clone());
        for y in 0..out.height {
            for x in 0..out.width {
                out.blocked[y * out.width + x] = self.blocked[(y / factor) * self.width + x / factor];
            }
        }
        out
    }

    /// Serialises in MovingAI `.map` format, blocked cells as `@`.
    pub fn to_movingai(&self) -> String {
        let mut s = format!("type octile\nheight {}\nwidth {}\nmap\n", self.height, self.width);
        for y in 0..self.height {
            for x in 0..self.width {
                s.push(if self.blocked[y * self.width + x] { '@' } else { '.' });
            }
            s.push('\n');
        }
        s
    }
}

fn header_value(line: Option<(usize, String)>, key: &str, expect_line: usize) -> Result<String, MapError> {
    let (n, text) = line.ok_or_else(|| parse_err(expect_line, format!("missing `{key}` header")))?;
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => Ok(v.to_string()),
        _ => Err(parse_err(n, format!("expected `{key} <value>`, found `{text}`"))),
    }
}

/// Parses a MovingAI `.map` file: `type`, `height`, `width`, `map` header
/// lines followed by `height` rows of `width` glyphs. `.` and `G` are
/// passable; `@`, `O`, `T`, `W` and `S` are blocked.
pub fn load_movingai_map<R: Read>(source: R, name: impl Into<String>) -> Result<GridMap, MapError> {
    let mut lines = BufReader::new(source)
        .lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l.trim_end_matches('\r').to_string())));
    let mut next = || lines.next().transpose();

    header_value(next()?, "type", 1)?;
    let height_line = next()?;
    let n = height_line.as_ref().map_or(2, |l| l.0);
    let height: usize = header_value(height_line, "height", 2)?
        .parse()
        .map_err(|_| parse_err(n, "height is not a number"))?;
    let width_line = next()?;
    let n = width_line.as_ref().map_or(3, |l| l.0);
    let width: usize = header_value(width_line, "width", 3)?
        .parse()
        .map_err(|_| parse_err(n, "width is not a number"))?;
    match next()? {
        Some((_, l)) if l.trim() == "map" => {}
        Some((n, l)) => return Err(parse_err(n, format!("expected `map`, found `{l}`"))),
        None => return Err(parse_err(4, "missing `map` line")),
    }

    let mut map = GridMap::new(width, height, name);
    for y in 0..height {
        let (n, row) = next()?.ok_or_else(|| parse_err(5 + y, format!("expected {height} map rows, found {y}")))?;
        let glyphs: Vec<char> = row.chars().collect();
        if glyphs.len() != width {
            return Err(parse_err(n, format!("row has {} cells, expected {width}", glyphs.len())));
        }
        for (x, c) in glyphs.into_iter().enumerate() {
            let blocked = match c {
                '.' | 'G' => false,
                '@' | 'O' | 'T' | 'W' | 'S' => true,
                other => return Err(parse_err(n, format!("unknown glyph `{other}` at column {x}"))),
            };
            map.blocked[y * width + x] = blocked;
        }
    }
    while let Some((n, l)) = next()? {
        if !l.trim().is_empty() {
            return Err(parse_err(n, "unexpected content after the last map row"));
        }
    }
    Ok(map)
}

pub fn load_movingai_file(path: impl AsRef<Path>) -> Result<GridMap, MapError> {
    let path = path.as_ref();
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    load_movingai_map(fs::File::open(path)?, name)
}
