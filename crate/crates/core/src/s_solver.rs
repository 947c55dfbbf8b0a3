//! The continuous parameter `s` in `h ^ h` and the subspace `l` of `h`.

use num_traits::Zero;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::bd::BdTriple;
use crate::error::{Error, Result};
use crate::linalg::{self, Reduced};
use crate::scalar::{parse_rational, rat, rational_to_string, Rational};

/// Antisymmetric `n x n` rational matrix; `s(i, j)` is the coefficient of
/// `e_ii (x) e_jj`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SElement {
    n: usize,
    entries: Vec<Vec<Rational>>,
}

impl SElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![vec![Rational::zero(); n]; n],
        }
    }

    /// Builds from the strictly upper triangle in lexicographic `(i, j)` order.
    pub fn from_upper(n: usize, upper: &[Rational]) -> Self {
        let mut s = Self::zero(n);
        for ((i, j), v) in upper_indices(n).into_iter().zip(upper) {
            s.set(i, j, v.clone());
        }
        s
    }

    /// Builds from a full matrix, rejecting anything not antisymmetric.
    pub fn from_matrix(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("s must be a square matrix".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v != -entries[j][i].clone() {
                    return Err(Error::Parse(format!(
                        "s is not antisymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based entry.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i - 1][j - 1]
    }

    /// Sets `s_ij` and `s_ji = -s_ij`.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[j - 1][i - 1] = -v.clone();
        self.entries[i - 1][j - 1] = v;
    }

    pub fn upper(&self) -> Vec<Rational> {
        upper_indices(self.n)
            .into_iter()
            .map(|(i, j)| self.get(i, j).clone())
            .collect()
    }

    pub fn add(&self, other: &SElement) -> SElement {
        self.combine(other, |a, b| a + b)
    }

    pub fn scale(&self, c: &Rational) -> SElement {
        self.combine(self, |a, _| a * c)
    }

    fn combine(&self, other: &SElement, f: impl Fn(&Rational, &Rational) -> Rational) -> SElement {
        assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, o)| r.iter().zip(o).map(|(a, b)| f(a, b)).collect())
            .collect();
        SElement { n: self.n, entries }
    }

    pub fn is_antisymmetric(&self) -> bool {
        (1..=self.n).all(|i| (1..=self.n).all(|j| *self.get(i, j) == -self.get(j, i).clone()))
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }
}

#[derive(Serialize, Deserialize)]
struct SElementJson {
    n: usize,
    s: Vec<Vec<String>>,
}

impl Serialize for SElement {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        SElementJson {
            n: self.n,
            s: self
                .entries
                .iter()
                .map(|r| r.iter().map(rational_to_string).collect())
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SElementJson::deserialize(d)?;
        let entries = raw
            .s
            .iter()
            .map(|r| r.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        if entries.len() != raw.n {
            return Err(de::Error::custom("n does not match the matrix size"));
        }
        SElement::from_matrix(entries).map_err(de::Error::custom)
    }
}

/// `(i, j)` with `i < j`, lexicographic; the unknowns of the system.
pub fn upper_indices(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SSolution {
    pub particular: SElement,
    pub homogeneous_basis: Vec<SElement>,
}

impl SSolution {
    /// `particular + sum coeffs[k] * basis[k]`.
    pub fn combination(&self, coeffs: &[Rational]) -> SElement {
        self.homogeneous_basis
            .iter()
            .zip(coeffs)
            .fold(self.particular.clone(), |acc, (b, c)| acc.add(&b.scale(c)))
    }
}

fn root_vector(n: usize, a: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[a - 1] = rat(1, 1);
    v[a] = rat(-1, 1);
    v
}

/// The linear system in the unknowns `s_ij`, `i < j`.
fn system(triple: &BdTriple) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = triple.n();
    let unknowns = upper_indices(n);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (&a, &b) in triple.t_map() {
        let alpha = root_vector(n, a);
        let image = root_vector(n, b);
        let diff: Vec<Rational> = alpha.iter().zip(&image).map(|(x, y)| x - y).collect();
        for col in 1..=n {
            let mut row = vec![Rational::zero(); unknowns.len()];
            for (k, &(i, j)) in unknowns.iter().enumerate() {
                // s_{i col} contributes with s_ij = s, s_ji = -s
                if j == col {
                    row[k] += &diff[i - 1];
                }
                if i == col {
                    row[k] -= &diff[j - 1];
                }
            }
            rows.push(row);
            rhs.push((&alpha[col - 1] + &image[col - 1]) * rat(1, 2));
        }
    }
    (rows, rhs)
}

/// Particular solution (free unknowns zero, lexicographic order) and a
/// basis of the homogeneous solutions.
pub fn solve_s(triple: &BdTriple) -> Result<SSolution> {
    let n = triple.n();
    let (rows, rhs) = system(triple);
    let cols = n * (n - 1) / 2;
    let red = Reduced::new(&rows, &rhs, cols);
    let particular = red
        .particular()
        .ok_or_else(|| Error::Internal(format!("inconsistent s-system for {triple}")))?;
    Ok(SSolution {
        particular: SElement::from_upper(n, &particular),
        homogeneous_basis: red.kernel().iter().map(|v| SElement::from_upper(n, v)).collect(),
    })
}

/// True iff `s` satisfies every equation of the system exactly.
pub fn check_s(triple: &BdTriple, s: &SElement) -> bool {
    if s.n() != triple.n() || !s.is_antisymmetric() {
        return false;
    }
    let n = triple.n();
    triple.t_map().iter().all(|(&a, &b)| {
        let alpha = root_vector(n, a);
        let image = root_vector(n, b);
        (1..=n).all(|col| {
            let lhs: Rational = (1..=n).map(|i| (&alpha[i - 1] - &image[i - 1]) * s.get(i, col)).sum();
            lhs == (&alpha[col - 1] + &image[col - 1]) * rat(1, 2)
        })
    })
}

/// Basis of `l`: vectors `x` with `x_a - x_{a+1} = x_b - x_{b+1}` whenever `T(a) = b`.
pub fn l_space(triple: &BdTriple) -> Vec<Vec<Rational>> {
    let n = triple.n();
    let rows: Vec<Vec<Rational>> = triple
        .t_map()
        .iter()
        .map(|(&a, &b)| {
            root_vector(n, a)
                .iter()
                .zip(root_vector(n, b))
                .map(|(x, y)| x - y)
                .collect()
        })
        .collect();
    let zeros = vec![Rational::zero(); rows.len()];
    Reduced::new(&rows, &zeros, n).kernel()
}

/// Dimension of the span of the given `s` elements.
pub fn span_dimension(elements: &[SElement]) -> usize {
    linalg::rank(&elements.iter().map(|s| s.upper()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::enumerate_triples;

    fn cg31() -> BdTriple {
        BdTriple::new(3, [(1, 2)]).unwrap()
    }

    fn trace_zero_cg31() -> SElement {
        SElement::from_upper(3, &[rat(1, 6), rat(-1, 6), rat(1, 6)])
    }

    #[test]
    fn empty_triple_has_full_kernel() {
        let sol = solve_s(&BdTriple::empty(4)).unwrap();
        assert_eq!(sol.particular, SElement::zero(4));
        assert_eq!(sol.homogeneous_basis.len(), 6);
        assert_eq!(span_dimension(&sol.homogeneous_basis), 6);
    }

    #[test]
    fn cg31_solution_space() {
        let sol = solve_s(&cg31()).unwrap();
        assert_eq!(sol.homogeneous_basis.len(), 1);
        assert!(check_s(&cg31(), &sol.particular));
        let target = trace_zero_cg31();
        assert!(check_s(&cg31(), &target));
        // target - particular must be a multiple of the single basis vector
        let diff = target.add(&sol.particular.scale(&rat(-1, 1)));
        let mut with = sol.homogeneous_basis.clone();
        with.push(diff);
        assert_eq!(span_dimension(&with), 1);
    }

    #[test]
    fn cg31_zero_s_fails() {
        assert!(!check_s(&cg31(), &SElement::zero(3)));
    }

    #[test]
    fn empty_triple_accepts_any_s() {
        let s = SElement::from_upper(3, &[rat(2, 3), rat(-5, 1), rat(1, 7)]);
        assert!(check_s(&BdTriple::empty(3), &s));
    }

    #[test]
    fn l_space_dimensions() {
        assert_eq!(l_space(&BdTriple::empty(4)).len(), 4);
        let l = l_space(&cg31());
        assert_eq!(l.len(), 2);
        for x in &l {
            assert_eq!(&x[0] - &x[1], &x[1] - &x[2]);
        }
    }

    #[test]
    fn kernel_is_wedge_square_of_l() {
        for n in 2..=5 {
            for t in enumerate_triples(n).unwrap() {
                let sol = solve_s(&t).unwrap();
                let d = l_space(&t).len();
                assert_eq!(sol.homogeneous_basis.len(), d * (d - 1) / 2, "{t}");
                assert!(check_s(&t, &sol.particular));
                for b in &sol.homogeneous_basis {
                    assert!(b.is_antisymmetric());
                    assert!(check_s(&t, &sol.particular.add(b)));
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let s = trace_zero_cg31();
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(
            js,
            r#"{"n":3,"s":[["0","1/6","-1/6"],["-1/6","0","1/6"],["1/6","-1/6","0"]]}"#
        );
        let back: SElement = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<SElement>(r#"{"n":2,"s":[["0","1"],["1","0"]]}"#).is_err());
    }
}
