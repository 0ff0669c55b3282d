use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graded_algebra::Bidegree;

/// Odd generators are stored as bits of a `u64`.
pub const MAX_ODD_GENERATORS: usize = 64;

/// A conjugate pair of coordinate families, e.g. `xi`/`th` of a given size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    pub name: String,
    pub conjugate: String,
    pub size: usize,
}

impl Family {
    pub fn new(name: impl Into<String>, conjugate: impl Into<String>, size: usize) -> Self {
        Family {
            name: name.into(),
            conjugate: conjugate.into(),
            size,
        }
    }
}

/// Role of a generator in `T*ΠV`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `x^i`, bidegree (0,0).
    Base,
    /// `p_i`, bidegree (1,1).
    BaseConjugate,
    /// `ξ^a`, `e_A`, ... bidegree (0,1).
    Fiber,
    /// `θ_a`, `ε^A`, ... bidegree (1,0).
    FiberConjugate,
}

impl GeneratorKind {
    pub fn bidegree(self) -> Bidegree {
        match self {
            GeneratorKind::Base => Bidegree::new(0, 0),
            GeneratorKind::BaseConjugate => Bidegree::new(1, 1),
            GeneratorKind::Fiber => Bidegree::new(0, 1),
            GeneratorKind::FiberConjugate => Bidegree::new(1, 0),
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, GeneratorKind::Fiber | GeneratorKind::FiberConjugate)
    }
}

/// Position of a generator inside a monomial key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Even(usize),
    Odd(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorInfo {
    pub name: String,
    pub kind: GeneratorKind,
    /// 0 for the base family, `1 + j` for fiber family `j`.
    pub family: usize,
    /// 1-based index inside the family.
    pub index: usize,
    pub slot: Slot,
    pub partner: Slot,
}

/// Declaration of the coordinates of `T*ΠV`.
///
/// Even slots hold `x_1..x_n` followed by `p_1..p_n`. Odd slots hold, for each
/// fiber family in declaration order, the fiber generators followed by their
/// conjugates; this is the canonical order of odd factors.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorTable {
    base: Family,
    fibers: Vec<Family>,
    even: Vec<GeneratorInfo>,
    odd: Vec<GeneratorInfo>,
    by_name: HashMap<String, Slot>,
}

impl fmt::Debug for GeneratorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorTable")
            .field("base", &self.base)
            .field("fibers", &self.fibers)
            .finish()
    }
}

fn valid_prefix(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphabetic())
}

impl GeneratorTable {
    pub fn new(base: Family, fibers: Vec<Family>) -> Result<Self> {
        let mut prefixes: Vec<&str> = vec![&base.name, &base.conjugate];
        for f in &fibers {
            prefixes.push(&f.name);
            prefixes.push(&f.conjugate);
        }
        for (i, p) in prefixes.iter().enumerate() {
            if !valid_prefix(p) {
                return Err(Error::InvalidTable(format!(
                    "family name `{p}` must be non-empty and alphabetic"
                )));
            }
            if prefixes[..i].contains(p) {
                return Err(Error::InvalidTable(format!("family name `{p}` used twice")));
            }
        }
        let n_odd: usize = fibers.iter().map(|f| 2 * f.size).sum();
        if n_odd > MAX_ODD_GENERATORS {
            return Err(Error::InvalidTable(format!(
                "{n_odd} odd generators exceed the supported maximum of {MAX_ODD_GENERATORS}"
            )));
        }

        let n = base.size;
        let mut even = Vec::with_capacity(2 * n);
        for i in 0..n {
            even.push(GeneratorInfo {
                name: format!("{}{}", base.name, i + 1),
                kind: GeneratorKind::Base,
                family: 0,
                index: i + 1,
                slot: Slot::Even(i),
                partner: Slot::Even(n + i),
            });
        }
        for i in 0..n {
            even.push(GeneratorInfo {
                name: format!("{}{}", base.conjugate, i + 1),
                kind: GeneratorKind::BaseConjugate,
                family: 0,
                index: i + 1,
                slot: Slot::Even(n + i),
                partner: Slot::Even(i),
            });
        }

        let mut odd = Vec::with_capacity(n_odd);
        let mut start = 0;
        for (j, fam) in fibers.iter().enumerate() {
            let r = fam.size;
            for a in 0..r {
                odd.push(GeneratorInfo {
                    name: format!("{}{}", fam.name, a + 1),
                    kind: GeneratorKind::Fiber,
                    family: j + 1,
                    index: a + 1,
                    slot: Slot::Odd(start + a),
                    partner: Slot::Odd(start + r + a),
                });
            }
            for a in 0..r {
                odd.push(GeneratorInfo {
                    name: format!("{}{}", fam.conjugate, a + 1),
                    kind: GeneratorKind::FiberConjugate,
                    family: j + 1,
                    index: a + 1,
                    slot: Slot::Odd(start + r + a),
                    partner: Slot::Odd(start + a),
                });
            }
            start += 2 * r;
        }

        let by_name = even
            .iter()
            .chain(odd.iter())
            .map(|g| (g.name.clone(), g.slot))
            .collect();

        Ok(GeneratorTable {
            base,
            fibers,
            even,
            odd,
            by_name,
        })
    }

    /// `x/p` of size `n` and a single `xi/th` fiber family of rank `r`.
    pub fn standard(n: usize, r: usize) -> Self {
        GeneratorTable::new(Family::new("x", "p", n), vec![Family::new("xi", "th", r)])
            .expect("standard table is valid")
    }

    pub fn base(&self) -> &Family {
        &self.base
    }

    pub fn fibers(&self) -> &[Family] {
        &self.fibers
    }

    pub fn base_dim(&self) -> usize {
        self.base.size
    }

    pub fn n_even(&self) -> usize {
        self.even.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odd.len()
    }

    pub fn info(&self, slot: Slot) -> &GeneratorInfo {
        match slot {
            Slot::Even(i) => &self.even[i],
            Slot::Odd(i) => &self.odd[i],
        }
    }

    pub fn even_info(&self, i: usize) -> &GeneratorInfo {
        &self.even[i]
    }

    pub fn odd_info(&self, i: usize) -> &GeneratorInfo {
        &self.odd[i]
    }

    pub fn generators(&self) -> impl Iterator<Item = &GeneratorInfo> {
        self.even.iter().chain(self.odd.iter())
    }

    pub fn lookup(&self, name: &str) -> Result<Slot> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Slot of generator `index` (1-based) of the given family prefix.
    pub fn slot_of(&self, prefix: &str, index: usize) -> Result<Slot> {
        self.lookup(&format!("{prefix}{index}"))
    }

    /// Odd slots of the fiber generators of family `j` (0-based among fibers).
    pub fn fiber_slots(&self, j: usize) -> Vec<usize> {
        self.odd
            .iter()
            .filter(|g| g.family == j + 1 && g.kind == GeneratorKind::Fiber)
            .map(|g| odd_index(g.slot))
            .collect()
    }

    /// Odd slots of the conjugates of family `j` (0-based among fibers).
    pub fn conjugate_slots(&self, j: usize) -> Vec<usize> {
        self.odd
            .iter()
            .filter(|g| g.family == j + 1 && g.kind == GeneratorKind::FiberConjugate)
            .map(|g| odd_index(g.slot))
            .collect()
    }

    /// Value of the big bracket on a pair of odd generators.
    pub(crate) fn odd_pairing(&self, a: usize, b: usize) -> i64 {
        // {ξ,θ} = {θ,ξ} = 1
        if self.odd[a].partner == Slot::Odd(b) {
            1
        } else {
            0
        }
    }
}

fn odd_index(slot: Slot) -> usize {
    match slot {
        Slot::Odd(i) => i,
        Slot::Even(_) => unreachable!("fiber generators are odd"),
    }
}
