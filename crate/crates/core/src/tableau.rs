//! Column-strict rectangular tableaux and their textual form `1,1/2,3`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A `rows x cols` rectangle, the shape of the crystal `B^{rows,cols}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RectShape {
    pub rows: usize,
    pub cols: usize,
}

impl RectShape {
    pub fn new(rows: usize, cols: usize) -> Self {
        RectShape { rows, cols }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        if self.rows == 0 || self.rows >= n || self.cols == 0 || n > u8::MAX as usize {
            return Err(Error::InvalidShape {
                rows: self.rows,
                cols: self.cols,
                rank: n,
            });
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.rows * self.cols
    }
}

impl fmt::Display for RectShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

impl FromStr for RectShape {
    type Err = Error;

    /// `KxL`, e.g. `2x1`.
    fn from_str(s: &str) -> Result<Self> {
        let (k, l) = s
            .trim()
            .split_once(['x', 'X'])
            .ok_or_else(|| Error::Parse(alloc::format!("shape {s:?} is not of the form KxL")))?;
        let rows = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(alloc::format!("bad rows in {s:?}")))?;
        let cols = l
            .trim()
            .parse()
            .map_err(|_| Error::Parse(alloc::format!("bad cols in {s:?}")))?;
        Ok(RectShape { rows, cols })
    }
}

/// Parse a comma separated list of shapes; the empty string is the empty list.
pub fn parse_shapes(s: &str) -> Result<Vec<RectShape>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

/// Row-major entries, rows weakly increasing, columns strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    shape: RectShape,
    entries: Vec<u8>,
}

impl Tableau {
    pub fn new(shape: RectShape, entries: Vec<u8>) -> Result<Self> {
        let t = Tableau { shape, entries };
        t.check()?;
        Ok(t)
    }

    pub(crate) fn from_raw(shape: RectShape, entries: Vec<u8>) -> Self {
        Tableau { shape, entries }
    }

    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidTableau(
                "rows must be nonempty and of equal length".into(),
            ));
        }
        let entries = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Tableau::new(RectShape::new(rows.len(), cols), entries)
    }

    /// Classical highest weight element: row `r` filled with `r`.
    pub fn highest(shape: RectShape) -> Self {
        let entries = (0..shape.rows)
            .flat_map(|r| core::iter::repeat_n(r as u8 + 1, shape.cols))
            .collect();
        Tableau { shape, entries }
    }

    fn check(&self) -> Result<()> {
        let RectShape { rows, cols } = self.shape;
        if rows == 0 || cols == 0 || self.entries.len() != rows * cols {
            return Err(Error::InvalidTableau(
                "entry count does not match shape".into(),
            ));
        }
        if self.entries.contains(&0) {
            return Err(Error::InvalidTableau("entries start at 1".into()));
        }
        for r in 0..rows {
            for c in 0..cols {
                let x = self.get(r, c);
                if c + 1 < cols && x > self.get(r, c + 1) {
                    return Err(Error::InvalidTableau(alloc::format!(
                        "row {} decreases",
                        r + 1
                    )));
                }
                if r + 1 < rows && x >= self.get(r + 1, c) {
                    return Err(Error::InvalidTableau(alloc::format!(
                        "column {} not strictly increasing",
                        c + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Largest entry must not exceed `n`.
    pub fn check_rank(&self, n: usize) -> Result<()> {
        self.shape.validate(n)?;
        if self.entries.iter().any(|&x| x as usize > n) {
            return Err(Error::InvalidTableau(alloc::format!(
                "entry exceeds n = {n}"
            )));
        }
        Ok(())
    }

    pub fn shape(&self) -> RectShape {
        self.shape
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.shape.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        let c = self.shape.cols;
        &self.entries[row * c..(row + 1) * c]
    }

    /// Content vector: coordinate `m` counts entries equal to `m + 1`.
    pub fn content(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for &x in &self.entries {
            v[x as usize - 1] += 1;
        }
        v
    }

    pub fn count(&self, letter: u8) -> usize {
        self.entries.iter().filter(|&&x| x == letter).count()
    }

    /// Row-major positions in reading order: bottom row first, each row
    /// left to right.
    pub(crate) fn reading_positions(shape: RectShape) -> impl Iterator<Item = usize> {
        (0..shape.rows)
            .rev()
            .flat_map(move |r| (0..shape.cols).map(move |c| r * shape.cols + c))
    }

    pub fn reading_word(&self) -> Vec<u8> {
        Tableau::reading_positions(self.shape)
            .map(|p| self.entries[p])
            .collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.shape.rows {
            if r > 0 {
                write!(f, "/")?;
            }
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Tableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for row in s.split('/') {
            let parsed: core::result::Result<Vec<u8>, _> =
                row.split(',').map(|x| x.trim().parse::<u8>()).collect();
            rows.push(parsed.map_err(|_| Error::Parse(alloc::format!("bad tableau {s:?}")))?);
        }
        let refs: Vec<&[u8]> = rows.iter().map(Vec::as_slice).collect();
        Tableau::from_rows(&refs)
    }
}

/// All column-strict fillings of `shape` with entries in `1..=n`, in
/// increasing lexicographic order of row-major entries.
pub fn enumerate(shape: RectShape, n: usize) -> Result<Vec<Tableau>> {
    shape.validate(n)?;
    let RectShape { rows, cols } = shape;
    let mut out = Vec::new();
    let mut cur = vec![0u8; rows * cols];
    fn fill(
        pos: usize,
        rows: usize,
        cols: usize,
        n: u8,
        cur: &mut Vec<u8>,
        out: &mut Vec<Tableau>,
        shape: RectShape,
    ) {
        if pos == rows * cols {
            out.push(Tableau::from_raw(shape, cur.clone()));
            return;
        }
        let (r, c) = (pos / cols, pos % cols);
        let mut lo = 1u8;
        if c > 0 {
            lo = lo.max(cur[pos - 1]);
        }
        if r > 0 {
            lo = lo.max(cur[pos - cols] + 1);
        }
        // room for the strictly increasing entries below
        let hi = n - (rows - 1 - r) as u8;
        for x in lo..=hi {
            cur[pos] = x;
            fill(pos + 1, rows, cols, n, cur, out, shape);
        }
    }
    fill(0, rows, cols, n as u8, &mut cur, &mut out, shape);
    Ok(out)
}

/// Textual form of a sequence of tableaux: factors joined by `|`.
pub fn join_tableaux(ts: &[Tableau]) -> String {
    let mut s = String::new();
    for (k, t) in ts.iter().enumerate() {
        if k > 0 {
            s.push('|');
        }
        s.push_str(&alloc::format!("{t}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate(RectShape::new(1, 1), 2).unwrap().len(), 2);
        let cols = enumerate(RectShape::new(2, 1), 3).unwrap();
        let text: Vec<_> = cols.iter().map(ToString::to_string).collect();
        assert_eq!(text, ["1/2", "1/3", "2/3"]);
        assert_eq!(enumerate(RectShape::new(2, 2), 3).unwrap().len(), 6);
        assert_eq!(
            enumerate(RectShape::new(3, 1), 3),
            Err(Error::InvalidShape {
                rows: 3,
                cols: 1,
                rank: 3
            })
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // every filling of the rectangle, filtered by column strictness
        for n in 2..=4usize {
            for (rows, cols) in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1), (2, 3)] {
                let shape = RectShape::new(rows, cols);
                if shape.validate(n).is_err() {
                    continue;
                }
                let cells = rows * cols;
                let mut count = 0;
                for code in 0..n.pow(cells as u32) {
                    let mut c = code;
                    let entries: Vec<u8> = (0..cells)
                        .map(|_| {
                            let x = (c % n) as u8 + 1;
                            c /= n;
                            x
                        })
                        .collect();
                    if Tableau::new(shape, entries).is_ok() {
                        count += 1;
                    }
                }
                assert_eq!(enumerate(shape, n).unwrap().len(), count, "n={n} {shape}");
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert!("2,1".parse::<Tableau>().is_err());
        assert!("1,1/1,2".parse::<Tableau>().is_err());
        assert!("1,2/3".parse::<Tableau>().is_err());
        assert!("a".parse::<Tableau>().is_err());
        assert_eq!("2x3".parse::<RectShape>().unwrap(), RectShape::new(2, 3));
        assert!("23".parse::<RectShape>().is_err());
        assert_eq!(parse_shapes("").unwrap(), Vec::new());
        assert_eq!(parse_shapes("1x1,2x1").unwrap().len(), 2);
    }

    #[test]
    fn reading_word_bottom_row_first() {
        let t: Tableau = "1,1/2,3".parse().unwrap();
        assert_eq!(t.reading_word(), [2, 3, 1, 1]);
        assert_eq!(t.content(3), [2, 1, 1]);
    }

    proptest! {
        #[test]
        fn text_round_trip(idx in 0usize..1000, n in 3usize..6) {
            let all = enumerate(RectShape::new(2, 3), n).unwrap();
            let t = &all[idx % all.len()];
            let s = t.to_string();
            prop_assert_eq!(&s.parse::<Tableau>().unwrap(), t);
            prop_assert_eq!(s.parse::<Tableau>().unwrap().to_string(), s);
        }
    }
}
