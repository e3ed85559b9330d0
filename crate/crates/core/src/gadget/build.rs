use serde::{Deserialize, Serialize};

use crate::ba::{Element, FinAlg, NamedAlgebra, Subalgebra};
use crate::construct::{free_algebra_named, quotient_by_ideal, QuotientMap, DEFAULT_ATOM_CAP};
use crate::error::{Error, Result};

/// Size of a gadget: `m` is the truncation depth, `g` the number of base
/// generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GadgetParams {
    pub m: usize,
    pub g: usize,
}

impl GadgetParams {
    pub fn new(m: usize, g: usize) -> Self {
        GadgetParams { m, g }
    }

    /// Free generators of the pre-quotient algebra.
    pub fn generator_count(&self) -> usize {
        self.g + (self.m + 1) + self.m + 2
    }

    /// Atoms of the pre-quotient algebra, saturating.
    pub fn pre_atoms(&self) -> u128 {
        1u128.checked_shl(self.generator_count() as u32).unwrap_or(u128::MAX)
    }

    pub fn check(&self, atom_cap: usize) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Range("truncation depth m must be at least 1".into()));
        }
        if self.pre_atoms() > atom_cap as u128 {
            return Err(Error::CapExceeded {
                what: "gadget atoms",
                needed: self.pre_atoms(),
                cap: atom_cap as u128,
            });
        }
        Ok(())
    }
}

impl Default for GadgetParams {
    fn default() -> Self {
        GadgetParams { m: 1, g: 1 }
    }
}

pub fn base_name(k: usize) -> String {
    format!("a[{k}]")
}

/// Name of `b_side^n`.
pub fn b_name(side: usize, n: usize) -> String {
    format!("b{side}[{n}]")
}

pub fn h_name(side: usize) -> String {
    format!("h{side}")
}

/// The truncated gadget: the free algebra on base, `b0`, `b1` and `h`
/// generators modulo the ideal generated by `b0ⁿ∧b1ⁿ∧h0` and
/// `b0ⁿ⁺¹∧b1ⁿ∧h1` for `n < m`, with its named subalgebras.
#[derive(Clone, Debug)]
pub struct GadgetAlgebra {
    pub params: GadgetParams,
    /// The free algebra before the quotient.
    pub pre: FinAlg,
    /// Ideal generators in the free algebra: `e0ⁿ` for all `n`, then `e1ⁿ`.
    pub ideal_generators: Vec<Element>,
    pub quotient: QuotientMap,
    /// The quotient algebra, carrying the generator names.
    pub algebra: FinAlg,
    /// Generated by the base generators.
    pub a2: Subalgebra,
    /// Base and `b0` generators.
    pub a0: Subalgebra,
    /// Base and `b1` generators.
    pub a1: Subalgebra,
    /// Base, `b0` and `b1` generators.
    pub bpush: Subalgebra,
    /// The two `h` generators.
    pub h: Subalgebra,
}

/// Generator names in order: base, `b0`, `b1`, `h`.
pub fn generator_names(p: GadgetParams) -> Vec<String> {
    let mut names: Vec<String> = (0..p.g).map(base_name).collect();
    names.extend((0..=p.m).map(|n| b_name(0, n)));
    names.extend((0..p.m).map(|n| b_name(1, n)));
    names.extend((0..2).map(h_name));
    names
}

impl GadgetAlgebra {
    pub fn base_names(&self) -> Vec<String> {
        (0..self.params.g).map(base_name).collect()
    }

    /// Names of the `b` generators on one side.
    pub fn b_names(&self, side: usize) -> Vec<String> {
        let count = if side == 0 { self.params.m + 1 } else { self.params.m };
        (0..count).map(|n| b_name(side, n)).collect()
    }

    pub fn named(&self, name: &str) -> Result<&Element> {
        self.algebra.named(name)
    }

    /// `b_side^n` in the quotient.
    pub fn b(&self, side: usize, n: usize) -> Result<&Element> {
        self.algebra.named(&b_name(side, n))
    }

    pub fn h(&self, side: usize) -> Result<&Element> {
        self.algebra.named(&h_name(side))
    }

    /// Subalgebra of `alg` generated by the named elements.
    pub fn generated_by(alg: &FinAlg, names: &[String]) -> Result<Subalgebra> {
        let gens = names.iter().map(|n| alg.named(n)).collect::<Result<Vec<_>>>()?;
        Ok(Subalgebra::generated(alg.atom_count(), gens))
    }

    /// Generated by the base generators and one side's `b` generators.
    pub fn side(&self, side: usize) -> &Subalgebra {
        if side == 0 {
            &self.a0
        } else {
            &self.a1
        }
    }

    /// The subalgebra generated by one side's `b` generators alone.
    pub fn b_subalgebra(&self, alg: &FinAlg, side: usize) -> Result<Subalgebra> {
        GadgetAlgebra::generated_by(alg, &self.b_names(side))
    }

    /// The largest element of the ideal, in the free algebra.
    pub fn ideal_top(&self) -> Element {
        self.ideal_generators
            .iter()
            .fold(self.pre.zero(), |acc, e| acc.join(e))
    }

    /// The quotient with its named subalgebras, for export.
    pub fn to_named(&self) -> NamedAlgebra {
        let mut out = NamedAlgebra::new(self.algebra.clone());
        for (name, s) in [
            ("A2", &self.a2),
            ("A0", &self.a0),
            ("A1", &self.a1),
            ("Bpush", &self.bpush),
            ("H", &self.h),
        ] {
            out.subalgebras.insert(name.to_string(), s.clone());
        }
        out
    }
}

pub fn build_gadget(p: GadgetParams) -> Result<GadgetAlgebra> {
    build_gadget_capped(p, DEFAULT_ATOM_CAP)
}

pub fn build_gadget_capped(p: GadgetParams, atom_cap: usize) -> Result<GadgetAlgebra> {
    p.check(atom_cap)?;
    let pre = free_algebra_named(&generator_names(p), atom_cap)?;
    let get = |name: String| pre.named(&name).cloned();
    let (h0, h1) = (get(h_name(0))?, get(h_name(1))?);
    let mut ideal_generators = Vec::with_capacity(2 * p.m);
    for n in 0..p.m {
        ideal_generators.push(get(b_name(0, n))?.meet(&get(b_name(1, n))?).meet(&h0));
    }
    for n in 0..p.m {
        ideal_generators.push(get(b_name(0, n + 1))?.meet(&get(b_name(1, n))?).meet(&h1));
    }
    let (algebra, quotient) = quotient_by_ideal(&pre, &ideal_generators)?;
    let base: Vec<String> = (0..p.g).map(base_name).collect();
    let b0: Vec<String> = (0..=p.m).map(|n| b_name(0, n)).collect();
    let b1: Vec<String> = (0..p.m).map(|n| b_name(1, n)).collect();
    let with = |parts: &[&[String]]| -> Result<Subalgebra> {
        let names: Vec<String> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
        GadgetAlgebra::generated_by(&algebra, &names)
    };
    let a2 = with(&[&base])?;
    let a0 = with(&[&base, &b0])?;
    let a1 = with(&[&base, &b1])?;
    let bpush = with(&[&base, &b0, &b1])?;
    let h = with(&[&[h_name(0), h_name(1)]])?;
    Ok(GadgetAlgebra {
        params: p,
        pre,
        ideal_generators,
        quotient,
        algebra,
        a2,
        a0,
        a1,
        bpush,
        h,
    })
}
