use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartan matrix of C_n^(1) and its transpose, the matrix whose shifted
/// Weyl action moves degree vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub n: usize,
    pub a_c: Vec<Vec<i64>>,
    pub a_dual: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadRank(n));
        }
        let mut a = vec![vec![0i64; n + 1]; n + 1];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
            if i > 0 {
                row[i - 1] = -1;
            }
            if i < n {
                row[i + 1] = -1;
            }
        }
        a[1][0] = -2;
        a[n - 1][n] = -2;
        let a_dual = (0..=n).map(|i| (0..=n).map(|j| a[j][i]).collect()).collect();
        Ok(CartanData { n, a_c: a, a_dual })
    }

    /// Exponent of `y_j` in the Wronskian right-hand side for direction `i`.
    pub fn rhs_exponent(&self, j: usize, i: usize) -> u32 {
        if j == i {
            0
        } else {
            (-self.a_c[j][i]) as u32
        }
    }
}

/// Degrees `(k_0, .., k_n)`. Transforms act on arbitrary integer vectors, so
/// intermediate results may leave the nonnegative cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeVector(pub Vec<i64>);

impl DegreeVector {
    pub fn empty(n: usize) -> Self {
        DegreeVector(vec![0; n + 1])
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// New value of coordinate `i` under `w_i`.
    pub fn reflected(&self, i: usize) -> i64 {
        let n = self.n();
        let k = &self.0;
        if i == 0 {
            2 * k[1] + 1 - k[0]
        } else if i == n {
            2 * k[n - 1] + 1 - k[n]
        } else {
            k[i - 1] + k[i + 1] + 1 - k[i]
        }
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The shifted reflection `w_i`; an involution.
pub fn degree_transform(k: &DegreeVector, i: usize) -> Result<DegreeVector> {
    let n = k.n();
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let mut out = k.clone();
    out.0[i] = k.reflected(i);
    Ok(out)
}

/// Validity flag and the final degree vector `w_{j_m} .. w_{j_1} k^empty`.
/// On failure the vector is the last valid one.
pub fn is_degree_increasing(n: usize, js: &[usize]) -> (bool, DegreeVector) {
    let mut k = DegreeVector::empty(n);
    for &j in js {
        if j > n || k.reflected(j) <= k.get(j) {
            return (false, k);
        }
        k.0[j] = k.reflected(j);
    }
    (true, k)
}

/// A degree-increasing sequence together with its degree history.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenSequence {
    n: usize,
    js: Vec<usize>,
    degrees: Vec<DegreeVector>,
}

impl GenSequence {
    pub fn new(n: usize, js: &[usize]) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadRank(n));
        }
        let mut degrees = vec![DegreeVector::empty(n)];
        for (step, &j) in js.iter().enumerate() {
            if j > n {
                return Err(Error::IndexOutOfRange { index: j, max: n });
            }
            let k = degrees.last().unwrap();
            if k.reflected(j) <= k.get(j) {
                return Err(Error::NotDegreeIncreasing { step: step + 1, direction: j });
            }
            degrees.push(degree_transform(k, j)?);
        }
        Ok(GenSequence { n, js: js.to_vec(), degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn js(&self) -> &[usize] {
        &self.js
    }

    /// Number of steps m, which is also the number of parameters.
    pub fn len(&self) -> usize {
        self.js.len()
    }

    pub fn is_empty(&self) -> bool {
        self.js.is_empty()
    }

    /// Degree vector after `steps` generations.
    pub fn degrees_after(&self, steps: usize) -> &DegreeVector {
        &self.degrees[steps]
    }

    pub fn degrees(&self) -> &DegreeVector {
        self.degrees.last().unwrap()
    }

    /// The sequence without its last step.
    pub fn prefix(&self) -> Option<GenSequence> {
        if self.js.is_empty() {
            return None;
        }
        let m = self.js.len() - 1;
        Some(GenSequence { n: self.n, js: self.js[..m].to_vec(), degrees: self.degrees[..=m].to_vec() })
    }

    pub fn last(&self) -> Option<usize> {
        self.js.last().copied()
    }

    /// Degree gain `k~ - k` of step `l` (1-based), the weight of `c_l`.
    pub fn weight(&self, l: usize) -> i64 {
        let j = self.js[l - 1];
        self.degrees[l].get(j) - self.degrees[l - 1].get(j)
    }
}

impl fmt::Display for GenSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.js.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All degree-increasing sequences of length exactly `len`.
pub fn degree_increasing_sequences(n: usize, len: usize) -> Vec<GenSequence> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(js) = stack.pop() {
        if js.len() == len {
            if let Ok(s) = GenSequence::new(n, &js) {
                out.push(s);
            }
            continue;
        }
        let (ok, k) = is_degree_increasing(n, &js);
        if !ok {
            continue;
        }
        for j in (0..=n).rev() {
            if k.reflected(j) > k.get(j) {
                let mut next = js.clone();
                next.push(j);
                stack.push(next);
            }
        }
    }
    out
}
