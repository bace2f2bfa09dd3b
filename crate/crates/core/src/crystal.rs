//! The crystal `B^{k,l}` of `k x l` column-strict tableaux over `{1..n}`.
//!
//! Classical operators `e_i, f_i` (`1 <= i < n`) follow the signature rule on
//! the row reading word (bottom row first, rows left to right), read as a
//! tensor product in the order where the left letter is the left factor.
//! The affine operators are conjugates of `e_1, f_1` by promotion:
//! `e_0 = pr^{-1} e_1 pr`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::tableau::{enumerate, RectShape, Tableau};

/// Unmatched letters of the signature rule for colour `i` in a word.
///
/// Each `i + 1` is matched with the nearest unmatched `i` to its right.
/// Returns the positions of the unmatched `i`s and of the unmatched `i + 1`s;
/// all unmatched `i`s precede all unmatched `i + 1`s.
pub(crate) fn signature(word: impl Iterator<Item = u8>, i: u8) -> (Vec<usize>, Vec<usize>) {
    let mut free_lower = Vec::new();
    let mut open_upper: Vec<usize> = Vec::new();
    for (pos, x) in word.enumerate() {
        if x == i + 1 {
            open_upper.push(pos);
        } else if x == i && open_upper.pop().is_none() {
            free_lower.push(pos);
        }
    }
    (free_lower, open_upper)
}

fn check_classical(t: &Tableau, i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    t.check_rank(n)
}

fn word_at(t: &Tableau) -> (Vec<usize>, Vec<u8>) {
    let pos: Vec<usize> = Tableau::reading_positions(t.shape()).collect();
    let word = pos.iter().map(|&p| t.entries()[p]).collect();
    (pos, word)
}

/// `f_i` for `1 <= i < n`; `Ok(None)` when `phi_i(t) = 0`.
pub fn f_classical(t: &Tableau, i: usize, n: usize) -> Result<Option<Tableau>> {
    check_classical(t, i, n)?;
    let (pos, word) = word_at(t);
    let (lower, _) = signature(word.iter().copied(), i as u8);
    Ok(lower.last().map(|&k| {
        let mut entries = t.entries().to_vec();
        entries[pos[k]] += 1;
        Tableau::from_raw(t.shape(), entries)
    }))
}

/// `e_i` for `1 <= i < n`; `Ok(None)` when `epsilon_i(t) = 0`.
pub fn e_classical(t: &Tableau, i: usize, n: usize) -> Result<Option<Tableau>> {
    check_classical(t, i, n)?;
    let (pos, word) = word_at(t);
    let (_, upper) = signature(word.iter().copied(), i as u8);
    Ok(upper.first().map(|&k| {
        let mut entries = t.entries().to_vec();
        entries[pos[k]] -= 1;
        Tableau::from_raw(t.shape(), entries)
    }))
}

/// `(epsilon_i, phi_i)` for `1 <= i < n`.
pub fn string_lengths_classical(t: &Tableau, i: usize, n: usize) -> Result<(usize, usize)> {
    check_classical(t, i, n)?;
    let (lower, upper) = signature(t.reading_word().into_iter(), i as u8);
    Ok((upper.len(), lower.len()))
}

/// Schützenberger promotion: remove the letters `n`, slide the rest to the
/// bottom right by jeu de taquin, add one to every entry and fill the
/// vacated cells with `1`.
pub fn promotion(t: &Tableau, n: usize) -> Result<Tableau> {
    t.check_rank(n)?;
    let RectShape { rows, cols } = t.shape();
    let mut grid: Vec<Option<u8>> = t
        .entries()
        .iter()
        .map(|&x| (x as usize != n).then_some(x))
        .collect();
    // the n's form a horizontal strip; fill holes from the leftmost one
    let mut holes: Vec<usize> = (0..grid.len()).filter(|&p| grid[p].is_none()).collect();
    holes.sort_by_key(|&p| p % cols);
    for h in holes {
        let (mut r, mut c) = (h / cols, h % cols);
        loop {
            let up = if r > 0 {
                grid[(r - 1) * cols + c]
            } else {
                None
            };
            let left = if c > 0 { grid[r * cols + c - 1] } else { None };
            let from_up = match (up, left) {
                (None, None) => break,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some(a), Some(b)) => a >= b,
            };
            let (nr, nc) = if from_up { (r - 1, c) } else { (r, c - 1) };
            grid[r * cols + c] = grid[nr * cols + nc].take();
            r = nr;
            c = nc;
        }
    }
    let entries = grid.into_iter().map(|x| x.map_or(1, |v| v + 1)).collect();
    debug_assert!(rows * cols > 0);
    Ok(Tableau::from_raw(t.shape(), entries))
}

/// Inverse promotion: remove the `1`s, slide the rest to the top left,
/// subtract one from every entry and fill the vacated cells with `n`.
pub fn promotion_inverse(t: &Tableau, n: usize) -> Result<Tableau> {
    t.check_rank(n)?;
    let RectShape { rows, cols } = t.shape();
    let mut grid: Vec<Option<u8>> = t.entries().iter().map(|&x| (x != 1).then_some(x)).collect();
    let mut holes: Vec<usize> = (0..grid.len()).filter(|&p| grid[p].is_none()).collect();
    holes.sort_by_key(|&p| core::cmp::Reverse(p % cols));
    for h in holes {
        let (mut r, mut c) = (h / cols, h % cols);
        loop {
            let down = if r + 1 < rows {
                grid[(r + 1) * cols + c]
            } else {
                None
            };
            let right = if c + 1 < cols {
                grid[r * cols + c + 1]
            } else {
                None
            };
            let from_down = match (down, right) {
                (None, None) => break,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some(d), Some(x)) => d <= x,
            };
            let (nr, nc) = if from_down { (r + 1, c) } else { (r, c + 1) };
            grid[r * cols + c] = grid[nr * cols + nc].take();
            r = nr;
            c = nc;
        }
    }
    let entries = grid
        .into_iter()
        .map(|x| x.map_or(n as u8, |v| v - 1))
        .collect();
    Ok(Tableau::from_raw(t.shape(), entries))
}

/// `B^{k,l}` at rank `n` with all operators tabulated.
///
/// Elements are indexed in lexicographic order of their row-major entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crystal {
    rank: usize,
    shape: RectShape,
    elements: Vec<Tableau>,
    e: Vec<Vec<Option<u32>>>,
    f: Vec<Vec<Option<u32>>>,
    eps: Vec<Vec<u32>>,
    phi: Vec<Vec<u32>>,
    content: Vec<Vec<i64>>,
    promotion: Vec<u32>,
    promotion_inv: Vec<u32>,
}

impl Crystal {
    pub fn new(n: usize, shape: RectShape) -> Result<Self> {
        let elements = enumerate(shape, n)?;
        let size = elements.len();
        let index = |t: &Tableau| -> u32 {
            elements
                .binary_search(t)
                .expect("operator result lies in the crystal") as u32
        };
        let mut e = vec![vec![None; size]; n];
        let mut f = vec![vec![None; size]; n];
        let mut eps = vec![vec![0u32; size]; n];
        let mut phi = vec![vec![0u32; size]; n];
        for (b, t) in elements.iter().enumerate() {
            for i in 1..n {
                e[i][b] = e_classical(t, i, n)?.map(|x| index(&x));
                f[i][b] = f_classical(t, i, n)?.map(|x| index(&x));
                let (ep, ph) = string_lengths_classical(t, i, n)?;
                eps[i][b] = ep as u32;
                phi[i][b] = ph as u32;
            }
        }
        let mut promo = vec![0u32; size];
        let mut promo_inv = vec![0u32; size];
        for (b, t) in elements.iter().enumerate() {
            let p = index(&promotion(t, n)?);
            promo[b] = p;
            promo_inv[p as usize] = b as u32;
        }
        for b in 0..size {
            let p = promo[b] as usize;
            e[0][b] = e[1][p].map(|x| promo_inv[x as usize]);
            f[0][b] = f[1][p].map(|x| promo_inv[x as usize]);
            eps[0][b] = eps[1][p];
            phi[0][b] = phi[1][p];
        }
        let content = elements.iter().map(|t| t.content(n)).collect();
        Ok(Crystal {
            rank: n,
            shape,
            elements,
            e,
            f,
            eps,
            phi,
            content,
            promotion: promo,
            promotion_inv: promo_inv,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn shape(&self) -> RectShape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Tableau] {
        &self.elements
    }

    pub fn tableau(&self, b: usize) -> &Tableau {
        &self.elements[b]
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.elements.binary_search(t).ok()
    }

    pub fn e(&self, i: usize, b: usize) -> Option<usize> {
        self.e[i][b].map(|x| x as usize)
    }

    pub fn f(&self, i: usize, b: usize) -> Option<usize> {
        self.f[i][b].map(|x| x as usize)
    }

    pub fn epsilon(&self, i: usize, b: usize) -> usize {
        self.eps[i][b] as usize
    }

    pub fn phi(&self, i: usize, b: usize) -> usize {
        self.phi[i][b] as usize
    }

    /// Content vector of element `b`.
    pub fn weight(&self, b: usize) -> &[i64] {
        &self.content[b]
    }

    /// `<alpha_i^vee, wt(b)>`; for `i = 0` this is `#n - #1`.
    pub fn pairing(&self, i: usize, b: usize) -> i64 {
        let w = &self.content[b];
        if i == 0 {
            w[self.rank - 1] - w[0]
        } else {
            w[i - 1] - w[i]
        }
    }

    /// Crystal reflection `s_i`.
    pub fn s(&self, i: usize, b: usize) -> usize {
        let (ep, ph) = (self.epsilon(i, b), self.phi(i, b));
        let mut x = b;
        if ph > ep {
            for _ in 0..ph - ep {
                x = self.f(i, x).expect("string length");
            }
        } else {
            for _ in 0..ep - ph {
                x = self.e(i, x).expect("string length");
            }
        }
        x
    }

    pub fn promotion(&self, b: usize) -> usize {
        self.promotion[b] as usize
    }

    pub fn promotion_inverse(&self, b: usize) -> usize {
        self.promotion_inv[b] as usize
    }

    /// The classical highest weight element (row `r` filled with `r`).
    pub fn highest(&self) -> usize {
        self.index_of(&Tableau::highest(self.shape))
            .expect("highest element")
    }

    /// Elements `b` with `phi(b) = sum_i coeffs[i] Lambda_i`.
    pub fn with_phi(&self, coeffs: &[i64]) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| (0..self.rank).all(|i| self.phi(i, b) as i64 == coeffs[i]))
            .collect()
    }

    /// Elements `b` with `epsilon(b) = sum_i coeffs[i] Lambda_i`.
    pub fn with_epsilon(&self, coeffs: &[i64]) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| (0..self.rank).all(|i| self.epsilon(i, b) as i64 == coeffs[i]))
            .collect()
    }

    /// Apply `e_0` to a tableau through the tables.
    pub fn e0(&self, t: &Tableau) -> Option<Tableau> {
        let b = self.index_of(t)?;
        self.e(0, b).map(|x| self.elements[x].clone())
    }

    pub fn f0(&self, t: &Tableau) -> Option<Tableau> {
        let b = self.index_of(t)?;
        self.f(0, b).map(|x| self.elements[x].clone())
    }
}
