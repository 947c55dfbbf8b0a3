use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Neg, Sub};

use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::scalar::{Laurent, Rational};

/// Index tuple `(i, j, k, l, p, r)` for `e_ij (x) e_kl (x) e_pr`, 1-based.
/// Two-leg elements leave the last two slots at zero.
pub type Index = [u8; 6];

/// Sparse element of `Mat_n^{(x) legs}` over Laurent scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    n: usize,
    legs: usize,
    entries: BTreeMap<Index, Laurent>,
}

pub fn idx2(i: usize, j: usize, k: usize, l: usize) -> Index {
    [i as u8, j as u8, k as u8, l as u8, 0, 0]
}

pub fn idx3(i: usize, j: usize, k: usize, l: usize, p: usize, r: usize) -> Index {
    [i as u8, j as u8, k as u8, l as u8, p as u8, r as u8]
}

/// Which slots of a three-leg element a two-leg element occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    L12,
    L13,
    L23,
}

impl Tensor {
    pub fn zero(n: usize, legs: usize) -> Self {
        assert!(legs == 2 || legs == 3, "legs must be 2 or 3");
        Self {
            n,
            legs,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, legs: usize) -> Self {
        let mut t = Self::zero(n, legs);
        for i in 1..=n {
            for k in 1..=n {
                if legs == 2 {
                    t.add_entry(idx2(i, i, k, k), Laurent::one());
                } else {
                    for p in 1..=n {
                        t.add_entry(idx3(i, i, k, k, p, p), Laurent::one());
                    }
                }
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Index, &Laurent)> {
        self.entries.iter()
    }

    pub fn get(&self, idx: &Index) -> Option<&Laurent> {
        self.entries.get(idx)
    }

    /// Entry or zero.
    pub fn at(&self, idx: &Index) -> Laurent {
        self.entries.get(idx).cloned().unwrap_or_default()
    }

    pub fn add_entry(&mut self, idx: Index, value: Laurent) {
        debug_assert!(self.index_ok(&idx), "index {idx:?} out of range");
        if value.is_zero() {
            return;
        }
        match self.entries.get_mut(&idx) {
            Some(v) => {
                *v += &value;
                if v.is_zero() {
                    self.entries.remove(&idx);
                }
            }
            None => {
                self.entries.insert(idx, value);
            }
        }
    }

    fn index_ok(&self, idx: &Index) -> bool {
        let used = 2 * self.legs;
        idx[..used].iter().all(|&v| v >= 1 && v as usize <= self.n) && idx[used..].iter().all(|&v| v == 0)
    }

    pub fn from_entries(n: usize, legs: usize, entries: impl IntoIterator<Item = (Index, Laurent)>) -> Self {
        let mut t = Self::zero(n, legs);
        for (i, v) in entries {
            t.add_entry(i, v);
        }
        t
    }

    pub fn map_values(&self, f: impl Fn(&Index, &Laurent) -> Laurent) -> Self {
        Self::from_entries(self.n, self.legs, self.entries.iter().map(|(i, v)| (*i, f(i, v))))
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        self.map_values(|_, v| v * c)
    }

    /// Substitutes `q -> q^{-1}` in every entry.
    pub fn invert_q(&self) -> Self {
        self.map_values(|_, v| v.invert_q())
    }

    fn check_shape(&self, other: &Tensor) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.legs != other.legs {
            return Err(Error::LegMismatch(format!(
                "{} legs against {} legs",
                self.legs, other.legs
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (i, v) in &other.entries {
            out.add_entry(*i, v.clone());
        }
        Ok(out)
    }

    /// Algebra product, legwise matrix multiplication.
    pub fn try_mul(&self, other: &Tensor) -> Result<Tensor> {
        self.mul_with(other, Execution::Sequential)
    }

    pub fn mul_with(&self, other: &Tensor, mode: Execution) -> Result<Tensor> {
        self.check_shape(other)?;
        let legs = self.legs;
        // group the right factor by its row indices
        let mut by_rows: HashMap<[u8; 3], Vec<(&Index, &Laurent)>> = HashMap::new();
        for (idx, v) in &other.entries {
            by_rows.entry([idx[0], idx[2], idx[4]]).or_default().push((idx, v));
        }
        let left: Vec<(&Index, &Laurent)> = self.entries.iter().collect();
        let partials = exec::map_chunks(mode, left.len(), |range| {
            let mut acc: HashMap<Index, Laurent> = HashMap::new();
            for &(a, x) in &left[range] {
                let Some(matches) = by_rows.get(&[a[1], a[3], a[5]]) else {
                    continue;
                };
                for &(b, y) in matches {
                    let mut out = [a[0], b[1], a[2], b[3], 0, 0];
                    if legs == 3 {
                        out[4] = a[4];
                        out[5] = b[5];
                    }
                    let prod = x * y;
                    match acc.get_mut(&out) {
                        Some(v) => *v += &prod,
                        None => {
                            acc.insert(out, prod);
                        }
                    }
                }
            }
            acc
        });
        let mut out = Tensor::zero(self.n, legs);
        for part in partials {
            for (i, v) in part {
                out.add_entry(i, v);
            }
        }
        Ok(out)
    }

    /// `x^{21}`: exchanges the two legs.
    pub fn flip(&self) -> Result<Tensor> {
        self.require_two_legs()?;
        Ok(Self::from_entries(
            self.n,
            2,
            self.entries.iter().map(|(i, v)| {
                (
                    idx2(i[2] as usize, i[3] as usize, i[0] as usize, i[1] as usize),
                    v.clone(),
                )
            }),
        ))
    }

    /// Transposes each factor: `(x (x) y)^T = x^T (x) y^T`.
    pub fn transpose_factors(&self) -> Tensor {
        Self::from_entries(
            self.n,
            self.legs,
            self.entries
                .iter()
                .map(|(i, v)| ([i[1], i[0], i[3], i[2], i[5], i[4]], v.clone())),
        )
    }

    /// Embeds a two-leg element into three legs with the identity on the
    /// omitted leg.
    pub fn embed(&self, placement: Placement) -> Result<Tensor> {
        self.require_two_legs()?;
        let mut out = Tensor::zero(self.n, 3);
        for (i, v) in &self.entries {
            for p in 1..=self.n as u8 {
                let idx = match placement {
                    Placement::L12 => [i[0], i[1], i[2], i[3], p, p],
                    Placement::L13 => [i[0], i[1], p, p, i[2], i[3]],
                    Placement::L23 => [p, p, i[0], i[1], i[2], i[3]],
                };
                out.add_entry(idx, v.clone());
            }
        }
        Ok(out)
    }

    fn require_two_legs(&self) -> Result<()> {
        if self.legs != 2 {
            return Err(Error::LegMismatch(format!("expected 2 legs, got {}", self.legs)));
        }
        Ok(())
    }

    /// Every entry has only exponent-zero terms.
    pub fn is_constant(&self) -> bool {
        self.entries.values().all(|v| v.is_constant())
    }

    /// Scalar at `q^0` of each entry, as rationals.
    pub fn constant_parts(&self) -> BTreeMap<Index, Rational> {
        self.entries.iter().map(|(i, v)| (*i, v.constant_term())).collect()
    }
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        self.try_add(rhs).expect("tensor shapes must match")
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        self.try_add(&-rhs).expect("tensor shapes must match")
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.map_values(|_, v| -v)
    }
}

impl std::ops::Mul for &Tensor {
    type Output = Tensor;
    fn mul(self, rhs: &Tensor) -> Tensor {
        self.try_mul(rhs).expect("tensor shapes must match")
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    idx: Vec<u8>,
    value: Laurent,
}

/// `{"n", "legs", "entries": [{"idx", "value"}]}` with entries in
/// lexicographic index order.
impl Serialize for Tensor {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<EntryJson> = self
            .entries
            .iter()
            .map(|(i, v)| EntryJson {
                idx: i[..2 * self.legs].to_vec(),
                value: v.clone(),
            })
            .collect();
        let mut st = ser.serialize_struct("Tensor", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("legs", &self.legs)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct TensorJson {
    n: usize,
    legs: usize,
    entries: Vec<EntryJson>,
}

impl<'de> Deserialize<'de> for Tensor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TensorJson::deserialize(d)?;
        if raw.legs != 2 && raw.legs != 3 {
            return Err(D::Error::custom("legs must be 2 or 3"));
        }
        let mut t = Tensor::zero(raw.n, raw.legs);
        for e in raw.entries {
            if e.idx.len() != 2 * raw.legs {
                return Err(D::Error::custom("index length does not match legs"));
            }
            let mut idx = [0u8; 6];
            idx[..e.idx.len()].copy_from_slice(&e.idx);
            if !t.index_ok(&idx) {
                return Err(D::Error::custom(format!("index {:?} out of range", e.idx)));
            }
            t.add_entry(idx, e.value);
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, i: usize, j: usize, k: usize, l: usize) -> Tensor {
        Tensor::from_entries(n, 2, [(idx2(i, j, k, l), Laurent::one())])
    }

    #[test]
    fn index_chaining() {
        let x = unit(3, 1, 2, 3, 2);
        let y = unit(3, 2, 3, 2, 1);
        assert_eq!(&x * &y, unit(3, 1, 3, 3, 1));
        assert!((&y * &x).is_zero());
    }

    #[test]
    fn identity_is_neutral() {
        let x = Tensor::from_entries(
            3,
            2,
            [
                (idx2(1, 2, 3, 1), Laurent::q_pow_int(2)),
                (idx2(2, 2, 1, 3), Laurent::from_int(-4)),
            ],
        );
        let one = Tensor::identity(3, 2);
        assert_eq!(&one * &x, x);
        assert_eq!(&x * &one, x);
    }

    #[test]
    fn flip_and_embed() {
        let x = unit(4, 1, 2, 3, 4);
        assert_eq!(x.flip().unwrap(), unit(4, 3, 4, 1, 2));
        let e = x.embed(Placement::L13).unwrap();
        assert_eq!(e.len(), 4);
        assert!(e.get(&idx3(1, 2, 2, 2, 3, 4)).is_some());
        assert!(Tensor::zero(2, 3).flip().is_err());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        assert!(Tensor::zero(2, 2).try_mul(&Tensor::zero(3, 2)).is_err());
        assert!(Tensor::zero(2, 2).try_mul(&Tensor::zero(2, 3)).is_err());
    }

    #[test]
    fn parallel_product_matches() {
        let n = 3;
        let mut x = Tensor::zero(n, 2);
        let mut y = Tensor::zero(n, 2);
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        x.add_entry(idx2(i, j, k, l), Laurent::q_pow_int((i + 2 * k) as i64 - j as i64));
                        y.add_entry(idx2(i, j, k, l), Laurent::from_int((i * l) as i64 - 3));
                    }
                }
            }
        }
        let a = x.mul_with(&y, Execution::Sequential).unwrap();
        let b = x.mul_with(&y, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_round_trip() {
        let x = Tensor::from_entries(
            2,
            2,
            [
                (idx2(2, 1, 1, 2), Laurent::q_minus_q_inv()),
                (idx2(1, 1, 1, 1), Laurent::q_pow_int(1)),
            ],
        );
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(
            js,
            r#"{"n":2,"legs":2,"entries":[{"idx":[1,1,1,1],"value":{"1":"1"}},{"idx":[2,1,1,2],"value":{"-1":"-1","1":"1"}}]}"#
        );
        let back: Tensor = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }
}
