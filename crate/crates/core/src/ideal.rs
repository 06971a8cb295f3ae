//! Canonical representation of square-free monomial ideals via variable types.
//!
//! A list of `n` square-free monomial generators, none dividing another, is
//! determined by the set of types it uses: the type of a variable is the set
//! of generators it divides, stored here as a bitmask with bit `k-1`
//! representing generator `f_k`. Merging variables of equal type and
//! polarizing powers loses nothing for the combinatorics downstream, so this
//! module is the single entry point normalizing arbitrary monomial input into
//! that form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::MAX_GENERATORS;

/// Bitmask over generators `1..=n`; bit `k-1` stands for `f_k`.
pub type Mask = u32;

/// A variable type: the set of generators the variable divides, plus an
/// optional degree used only by equigeneration checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct VariableType {
    pub mask: Mask,
    pub degree: u32,
}

impl VariableType {
    pub fn new(mask: Mask) -> Self {
        VariableType { mask, degree: 1 }
    }
}

/// A square-free monomial ideal, encoded by its set of variable types.
///
/// Invariants: no two stored types share a mask, no mask is empty, and for
/// every ordered pair `i != j` some type contains `i` but not `j` (so the
/// generators really are a minimal generating set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeIdeal {
    n: usize,
    types: Vec<VariableType>,
}

/// A monomial with explicit exponents over named variables, used as input to
/// polarization.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExponentMonomial {
    pub exponents: BTreeMap<String, u32>,
}

impl ExponentMonomial {
    pub fn parse(vars: &[(&str, u32)]) -> Self {
        let mut exponents = BTreeMap::new();
        for (v, e) in vars {
            if *e > 0 {
                *exponents.entry(v.to_string()).or_insert(0) += e;
            }
        }
        ExponentMonomial { exponents }
    }

    fn divides(&self, other: &ExponentMonomial) -> bool {
        self.exponents
            .iter()
            .all(|(v, e)| other.exponents.get(v).copied().unwrap_or(0) >= *e)
    }
}

impl SquareFreeIdeal {
    /// Accepts a raw type set, enforcing every invariant. This is
    /// `validate_types` of the module contract.
    pub fn validate_types(n: usize, types: &[Mask]) -> Result<Self, Error> {
        Self::validate_typed(
            n,
            &types.iter().map(|&m| VariableType::new(m)).collect::<Vec<_>>(),
        )
    }

    /// Same as [`SquareFreeIdeal::validate_types`], keeping degrees.
    pub fn validate_typed(n: usize, types: &[VariableType]) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if n > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(MAX_GENERATORS));
        }
        let full: Mask = if n == 32 { !0 } else { (1 << n) - 1 };
        let mut seen: Vec<VariableType> = Vec::with_capacity(types.len());
        for t in types {
            if t.mask == 0 {
                return Err(Error::EmptyType);
            }
            if t.mask & !full != 0 {
                return Err(Error::IndexOutOfRange);
            }
            match seen.iter_mut().find(|s| s.mask == t.mask) {
                // Merged duplicates behave like a product of the two
                // variables, so degrees add.
                Some(s) => s.degree += t.degree,
                None => seen.push(*t),
            }
        }
        for i in 0..n {
            if !seen.iter().any(|t| t.mask >> i & 1 == 1) {
                return Err(Error::UnitGenerator(i + 1));
            }
        }
        // Minimality: each ordered pair (i, j) needs a witness type with i
        // set and j clear.
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let has_witness = seen
                    .iter()
                    .any(|t| t.mask >> i & 1 == 1 && t.mask >> j & 1 == 0);
                if !has_witness {
                    return Err(Error::NotMinimal(i + 1, j + 1));
                }
            }
        }
        seen.sort();
        Ok(SquareFreeIdeal { n, types: seen })
    }

    /// Builds the type set of a list of square-free monomials given as sets
    /// of variable names. Variables with identical type are merged (their
    /// degree contributions add); the output types are exactly the image of
    /// the type function.
    pub fn normalize_types(generators: &[Vec<&str>]) -> Result<Self, Error> {
        if generators.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = generators.len();
        if n > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(MAX_GENERATORS));
        }
        let mut tau: BTreeMap<&str, Mask> = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            for v in g {
                *tau.entry(v).or_insert(0) |= 1 << i;
            }
        }
        // Divisibility check on the raw input: f_i | f_j iff every variable
        // of f_i appears in f_j.
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && generators[i]
                        .iter()
                        .all(|v| generators[j].contains(v))
                {
                    return Err(Error::DivisibleGenerators(i + 1, j + 1));
                }
            }
        }
        let types: Vec<VariableType> = tau.values().map(|&m| VariableType::new(m)).collect();
        Self::validate_typed(n, &types)
    }

    /// Polarizes a list of monomials with arbitrary exponents into the
    /// square-free type-set representation. The GCD graph of the output
    /// equals the pairwise gcd-nontriviality pattern of the input.
    pub fn polarize(generators: &[ExponentMonomial]) -> Result<Self, Error> {
        if generators.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = generators.len();
        if n > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(MAX_GENERATORS));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && generators[i].divides(&generators[j]) {
                    return Err(Error::DivisibleGenerators(i + 1, j + 1));
                }
            }
        }
        // Polarized variable (x, level l) divides f_i iff exp_i(x) >= l, so
        // its type is read off directly without materializing the square-free
        // monomials.
        let mut tau: BTreeMap<(String, u32), Mask> = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            for (v, &e) in &g.exponents {
                for level in 1..=e {
                    *tau.entry((v.clone(), level)).or_insert(0) |= 1 << i;
                }
            }
        }
        let types: Vec<VariableType> = tau.values().map(|&m| VariableType::new(m)).collect();
        Self::validate_typed(n, &types)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Mask with all `n` generator bits set.
    pub fn full_mask(&self) -> Mask {
        (1u32 << self.n) - 1
    }

    /// Types sorted by mask ascending.
    pub fn types(&self) -> &[VariableType] {
        &self.types
    }

    pub fn type_masks(&self) -> impl Iterator<Item = Mask> + '_ {
        self.types.iter().map(|t| t.mask)
    }

    pub fn has_type(&self, mask: Mask) -> bool {
        self.types.iter().any(|t| t.mask == mask)
    }

    /// True iff `f_i` divides `lcm { f_j : j in sigma }`: every type
    /// containing `i` must intersect `sigma`.
    pub fn lcm_divides(&self, i: usize, sigma: Mask) -> Result<bool, Error> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange);
        }
        let bit = 1u32 << (i - 1);
        Ok(self
            .types
            .iter()
            .all(|t| t.mask & bit == 0 || t.mask & sigma != 0))
    }

    /// Degree of generator `f_i` under the stored per-type degrees:
    /// the sum of `deg(x_sigma)` over types containing `i`.
    pub fn generator_degree(&self, i: usize, degrees: &[u32]) -> u64 {
        debug_assert_eq!(degrees.len(), self.types.len());
        self.types
            .iter()
            .zip(degrees)
            .filter(|(t, _)| t.mask >> (i - 1) & 1 == 1)
            .map(|(_, &d)| d as u64)
            .sum()
    }

    /// True iff every generator has the same degree under the assignment.
    /// `degrees` is parallel to [`SquareFreeIdeal::types`]; all entries must
    /// be positive.
    pub fn is_equigenerated(&self, degrees: &[u32]) -> bool {
        assert_eq!(degrees.len(), self.types.len(), "one degree per type");
        assert!(degrees.iter().all(|&d| d > 0), "degrees must be positive");
        let d1 = self.generator_degree(1, degrees);
        (2..=self.n).all(|i| self.generator_degree(i, degrees) == d1)
    }

    /// Stored degrees, parallel to [`SquareFreeIdeal::types`].
    pub fn stored_degrees(&self) -> Vec<u32> {
        self.types.iter().map(|t| t.degree).collect()
    }

    /// Relabels generators: `perm[k]` is the new 0-based index of old
    /// generator `k+1`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, Error> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch);
        }
        let types: Vec<VariableType> = self
            .types
            .iter()
            .map(|t| {
                let mut m = 0;
                for k in 0..self.n {
                    if t.mask >> k & 1 == 1 {
                        m |= 1 << perm[k];
                    }
                }
                VariableType { mask: m, degree: t.degree }
            })
            .collect();
        Self::validate_typed(self.n, &types)
    }

    /// Restricts the ideal to the generators in `subset` (a mask), compacting
    /// indices in ascending order. Types meeting the complement are dropped;
    /// callers are responsible for only using this on unions of GCD-graph
    /// components, where types never straddle the cut.
    pub fn restrict(&self, subset: Mask) -> Result<(Self, Vec<usize>), Error> {
        let kept: Vec<usize> = (0..self.n).filter(|k| subset >> k & 1 == 1).collect();
        let mut types = Vec::new();
        for t in &self.types {
            if t.mask & subset == t.mask {
                let mut m = 0;
                for (new, &old) in kept.iter().enumerate() {
                    if t.mask >> old & 1 == 1 {
                        m |= 1 << new;
                    }
                }
                types.push(VariableType { mask: m, degree: t.degree });
            } else if t.mask & subset != 0 {
                return Err(Error::BadInput(
                    "type straddles the restriction cut".into(),
                ));
            }
        }
        let ideal = Self::validate_typed(kept.len(), &types)?;
        Ok((ideal, kept))
    }
}

/// Wire format for ideals: 1-based generator lists per type, sorted by mask,
/// so serialization is byte-stable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub types: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u32>>,
}

impl From<&SquareFreeIdeal> for IdealJson {
    fn from(ideal: &SquareFreeIdeal) -> Self {
        let types = ideal
            .types
            .iter()
            .map(|t| (1..=ideal.n).filter(|i| t.mask >> (i - 1) & 1 == 1).collect())
            .collect();
        let degrees = if ideal.types.iter().any(|t| t.degree != 1) {
            Some(ideal.types.iter().map(|t| t.degree).collect())
        } else {
            None
        };
        IdealJson { n: ideal.n, types, degrees }
    }
}

impl TryFrom<IdealJson> for SquareFreeIdeal {
    type Error = Error;

    fn try_from(json: IdealJson) -> Result<Self, Error> {
        let mut types = Vec::with_capacity(json.types.len());
        for (k, indices) in json.types.iter().enumerate() {
            let mut mask = 0u32;
            for &i in indices {
                if i == 0 || i > json.n {
                    return Err(Error::IndexOutOfRange);
                }
                mask |= 1 << (i - 1);
            }
            let degree = match &json.degrees {
                Some(ds) => *ds.get(k).ok_or(Error::BadInput("degrees array too short".into()))?,
                None => 1,
            };
            types.push(VariableType { mask, degree });
        }
        SquareFreeIdeal::validate_typed(json.n, &types)
    }
}

impl SquareFreeIdeal {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&IdealJson::from(self)).expect("ideal serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let json: IdealJson =
            serde_json::from_str(s).map_err(|e| Error::BadInput(e.to_string()))?;
        json.try_into()
    }
}
