use super::ConfigSpaceError;

/// A sparse integer matrix stored by columns; each column is sorted by row
/// with no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        Self { rows, columns }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// `(row, col, value)` lines.
    pub fn to_triplets(&self) -> String {
        let mut s = String::new();
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                s.push_str(&format!("{r} {c} {v}\n"));
            }
        }
        s
    }

    /// `self * other`, or `None` if the shapes disagree or an entry
    /// overflows.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        if other.rows != self.cols() {
            return None;
        }
        let mut columns = Vec::with_capacity(other.cols());
        for col in &other.columns {
            let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    let e = acc.entry(r).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            columns.push(acc.into_iter().filter(|&(_, v)| v != 0).collect());
        }
        Some(SparseMatrix::new(self.rows, columns))
    }

    /// Rank over the rationals by fraction-free column reduction.
    ///
    /// Each column is cleared against earlier pivots (keyed by their last
    /// row) using integer combinations `a·col − c·pivot`, then divided by
    /// the gcd of its entries. Arithmetic is checked; an overflow is an
    /// error, never a wrong answer.
    pub fn rank(&self) -> Result<usize, ConfigSpaceError> {
        let mut pivots: Vec<Option<Vec<(usize, i128)>>> = vec![None; self.rows];
        let mut rank = 0;
        for col in &self.columns {
            let mut v: Vec<(usize, i128)> = col.iter().map(|&(r, x)| (r, x as i128)).collect();
            while let Some(&(low, c)) = v.last() {
                let Some(p) = &pivots[low] else { break };
                let a = p.last().expect("pivot columns are nonempty").1;
                let g = gcd(a, c);
                v = combine(&v, a / g, p, c / g).ok_or(ConfigSpaceError::Overflow)?;
                normalize(&mut v);
            }
            if let Some(&(low, _)) = v.last() {
                pivots[low] = Some(v);
                rank += 1;
            }
        }
        Ok(rank)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

/// `x·u − y·w`, merged by row.
fn combine(u: &[(usize, i128)], x: i128, w: &[(usize, i128)], y: i128) -> Option<Vec<(usize, i128)>> {
    let mut out = Vec::with_capacity(u.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < w.len() {
        let (r, val) = match (u.get(i), w.get(j)) {
            (Some(&(ru, vu)), Some(&(rw, _))) if ru < rw => {
                i += 1;
                (ru, x.checked_mul(vu)?)
            }
            (Some(&(ru, _)), Some(&(rw, vw))) if rw < ru => {
                j += 1;
                (rw, y.checked_mul(vw)?.checked_neg()?)
            }
            (Some(&(ru, vu)), Some(&(_, vw))) => {
                i += 1;
                j += 1;
                (ru, x.checked_mul(vu)?.checked_sub(y.checked_mul(vw)?)?)
            }
            (Some(&(ru, vu)), None) => {
                i += 1;
                (ru, x.checked_mul(vu)?)
            }
            (None, Some(&(rw, vw))) => {
                j += 1;
                (rw, y.checked_mul(vw)?.checked_neg()?)
            }
            (None, None) => unreachable!(),
        };
        if val != 0 {
            out.push((r, val));
        }
    }
    Some(out)
}

fn normalize(v: &mut [(usize, i128)]) {
    let g = v.iter().fold(0, |g, &(_, x)| gcd(g, x));
    if g > 1 {
        for e in v.iter_mut() {
            e.1 /= g;
        }
    }
}
