//! `PSL(2,ℤ)` through Möbius words in `A: z ↦ z+2` and `E: z ↦ -1/z`,
//! the subgroups `K₀ ⊃ K₁ ⊃ ...` and their orbifold invariants.

mod mobius;

pub use mobius::{mobius_eval, MobiusLetter, MobiusWord, ProjectiveRational};

use serde::Serialize;
use thiserror::Error;

use crate::fpgroup::{
    abelianization, coset_enumeration, parse_presentation, reidemeister_schreier, Abelianization,
    CosetTable, FpError, Presentation, Word,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("{0}")]
    Rational(String),
    #[error(transparent)]
    FpGroup(#[from] FpError),
}

/// `< S T | S^2 (S*T)^3 >` with `S = E` and `T: z ↦ z+1`.
pub fn psl2z_presentation() -> Presentation {
    parse_presentation("< S T | S^2 (S*T)^3 >").expect("fixed presentation")
}

/// Generators `z+2` and `z/(1-2z)` of the level-two congruence subgroup,
/// as `A` and `EAE`.
pub fn gamma2_words() -> Vec<MobiusWord> {
    vec![MobiusWord::a(), MobiusWord::parse("E A E").expect("fixed word")]
}

/// Generators of `Kₙ`: the translation `A^{4(2n-1)}` and, for
/// `1-n ≤ l ≤ n-1`, the conjugates `A^{4l} A²E A^{-4l}` and
/// `A^{4l} AEA⁻³ A^{-4l}`. `K₀ = ⟨A, E⟩`.
///
/// The `2n-1` values of `l` are a full residue system modulo `2n-1`, so
/// these `4n-1` words freely generate a subgroup of index `2n-1` in `K₁`
/// whose fundamental polygon has `8n-2` sides.
pub fn k_subgroup_words(n: u32) -> Vec<MobiusWord> {
    k_words(n, 4 * (2 * n as i64 - 1))
}

/// The same list with `A^{4n}` as the translation. Conjugating by `A^{4n}`
/// shifts `l` by `n`, so this generates a subgroup of index `n` in `K₁`.
pub fn k_subgroup_words_with_translation_a4n(n: u32) -> Vec<MobiusWord> {
    k_words(n, 4 * n as i64)
}

fn k_words(n: u32, translation: i64) -> Vec<MobiusWord> {
    let a = MobiusWord::a();
    let e = MobiusWord::e();
    if n == 0 {
        return vec![a, e];
    }
    let n = n as i64;
    let p = a.pow(2).concat(&e);
    let q = a.concat(&e).concat(&a.pow(-3));
    let mut words = vec![a.pow(translation)];
    for l in 1 - n..n {
        let c = a.pow(4 * l);
        words.push(c.concat(&p).concat(&c.inverse()));
        words.push(c.concat(&q).concat(&c.inverse()));
    }
    words
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldInvariants {
    pub index: usize,
    pub genus: usize,
    pub cusps: usize,
    pub e2: usize,
    pub e3: usize,
    /// Rank of the free factor `2g + cusps - 1`; the whole group is free of
    /// this rank when `e2 = e3 = 0`.
    pub free_rank: usize,
}

pub fn subgroup_table(words: &[MobiusWord], max_cosets: usize) -> Result<CosetTable, ModularError> {
    let gens: Vec<Word> = words.iter().map(MobiusWord::to_psl_word).collect();
    Ok(coset_enumeration(&psl2z_presentation(), &gens, max_cosets)?)
}

/// Index, genus, cusps and elliptic points from the coset table, with
/// `g = 1 + μ/12 - e₂/4 - e₃/3 - cusps/2`.
pub fn modular_orbifold_invariants(
    words: &[MobiusWord],
    max_cosets: usize,
) -> Result<OrbifoldInvariants, ModularError> {
    Ok(invariants_of_table(&subgroup_table(words, max_cosets)?))
}

pub fn invariants_of_table(t: &CosetTable) -> OrbifoldInvariants {
    let index = t.index();
    let st = Word::new([1, 2]);
    let e2 = t.action(0).images().iter().enumerate().filter(|&(c, &d)| c == d).count();
    let e3 = (0..index).filter(|&c| t.trace(c, &st) == c).count();
    let cusps = t.action(1).cycle_decomposition().count();
    let twelve_g = 12 + index as i64 - 3 * e2 as i64 - 4 * e3 as i64 - 6 * cusps as i64;
    assert!(
        twelve_g >= 0 && twelve_g % 12 == 0,
        "orbifold genus must be a non-negative integer"
    );
    let genus = (twelve_g / 12) as usize;
    OrbifoldInvariants {
        index,
        genus,
        cusps,
        e2,
        e3,
        free_rank: 2 * genus + cusps - 1,
    }
}

/// Abelianization of the subgroup via Reidemeister–Schreier.
pub fn subgroup_abelianization(
    words: &[MobiusWord],
    max_cosets: usize,
) -> Result<Abelianization, ModularError> {
    let t = subgroup_table(words, max_cosets)?;
    let sub = reidemeister_schreier(&psl2z_presentation(), &t)?;
    Ok(abelianization(&sub.presentation))
}

/// Whether `c` normalizes the subgroup: `c⁻¹hc` and `chc⁻¹` fix coset 0
/// for every generator `h`.
pub fn normalizes(
    words: &[MobiusWord],
    conjugator: &MobiusWord,
    max_cosets: usize,
) -> Result<bool, ModularError> {
    let t = subgroup_table(words, max_cosets)?;
    let c = conjugator.to_psl_word();
    Ok(words.iter().all(|h| {
        let h = h.to_psl_word();
        t.trace(0, &c.conjugate(&h)) == 0 && t.trace(0, &c.inverse().conjugate(&h)) == 0
    }))
}

/// `A⁴` normalizes `Kₙ`; for `n = 1` also `A` itself.
pub fn a4_normalization_check(n: u32, max_cosets: usize) -> Result<bool, ModularError> {
    let words = k_subgroup_words(n);
    let a = MobiusWord::a();
    let mut ok = normalizes(&words, &a.pow(4), max_cosets)?;
    if n == 1 {
        ok &= normalizes(&words, &a, max_cosets)?;
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::DEFAULT_MAX_COSETS;

    #[test]
    fn generator_lists() {
        let k1: Vec<String> = k_subgroup_words(1).iter().map(|w| w.to_string()).collect();
        assert_eq!(k1, ["A^4", "A^2*E", "A*E*A^-3"]);
        assert_eq!(k_subgroup_words(2).len(), 7);
        for n in 1..6 {
            assert_eq!(k_subgroup_words(n).len(), 4 * n as usize - 1);
        }
        let k0: Vec<String> = k_subgroup_words(0).iter().map(|w| w.to_string()).collect();
        assert_eq!(k0, ["A", "E"]);
    }

    #[test]
    fn k0_invariants() {
        let inv = modular_orbifold_invariants(&k_subgroup_words(0), DEFAULT_MAX_COSETS).unwrap();
        assert_eq!((inv.index, inv.genus, inv.cusps, inv.e2, inv.e3), (3, 0, 2, 1, 0));
        // Z * Z/2
        let ab = subgroup_abelianization(&k_subgroup_words(0), DEFAULT_MAX_COSETS).unwrap();
        assert_eq!((ab.free_rank, ab.torsion_u64()), (1, vec![2]));
    }

    #[test]
    fn kn_battery() {
        for n in 1..=4u32 {
            let words = k_subgroup_words(n);
            let inv = modular_orbifold_invariants(&words, DEFAULT_MAX_COSETS).unwrap();
            let n = n as usize;
            assert_eq!(inv.index, 12 * (2 * n - 1), "n = {n}");
            assert_eq!(inv.genus, 2 * n - 1);
            assert_eq!(inv.cusps, 2);
            assert_eq!((inv.e2, inv.e3), (0, 0));
            assert_eq!(inv.free_rank, 4 * n - 1);
            let ab = subgroup_abelianization(&words, DEFAULT_MAX_COSETS).unwrap();
            assert_eq!(ab.free_rank, 4 * n - 1);
            assert!(ab.torsion.is_empty());
        }
    }

    #[test]
    fn a4n_translation_gives_index_n_in_k1() {
        for n in 1..=4u32 {
            let inv = modular_orbifold_invariants(
                &k_subgroup_words_with_translation_a4n(n),
                DEFAULT_MAX_COSETS,
            )
            .unwrap();
            assert_eq!(inv.index, 12 * n as usize);
            assert_eq!((inv.e2, inv.e3), (0, 0));
        }
    }

    #[test]
    fn polygon_vertices_span_the_translation() {
        // vertices 2l-1 for -4(n-1) <= l <= 4n run from -8n+7 to 8n-1, a
        // width of 8(2n-1): the translation length of A^{4(2n-1)}
        for n in 1..=4i64 {
            let (lo, hi) = (2 * (-4 * (n - 1)) - 1, 2 * (4 * n) - 1);
            let t = &k_subgroup_words(n as u32)[0];
            let img = mobius_eval(t, &ProjectiveRational::integer(lo));
            assert_eq!(img, ProjectiveRational::integer(hi));
        }
    }

    #[test]
    fn level_two_congruence_subgroup() {
        let inv = modular_orbifold_invariants(&gamma2_words(), DEFAULT_MAX_COSETS).unwrap();
        assert_eq!((inv.index, inv.genus, inv.cusps, inv.e2, inv.e3), (6, 0, 3, 0, 0));
        assert_eq!(inv.free_rank, 2);
    }

    #[test]
    fn normalization() {
        let k1 = k_subgroup_words(1);
        assert!(normalizes(&k1, &MobiusWord::a(), DEFAULT_MAX_COSETS).unwrap());
        assert!(normalizes(&k1, &MobiusWord::a().pow(4), DEFAULT_MAX_COSETS).unwrap());
        assert!(a4_normalization_check(1, DEFAULT_MAX_COSETS).unwrap());
        // K₁ is even normal in K₀ = ⟨A, E⟩
        assert!(normalizes(&k1, &MobiusWord::e(), DEFAULT_MAX_COSETS).unwrap());
        for n in 2..=4u32 {
            let w = k_subgroup_words(n);
            assert!(a4_normalization_check(n, DEFAULT_MAX_COSETS).unwrap());
            assert!(!normalizes(&w, &MobiusWord::a(), DEFAULT_MAX_COSETS).unwrap());
            assert!(!normalizes(&w, &MobiusWord::e(), DEFAULT_MAX_COSETS).unwrap());
        }
    }

    #[test]
    fn infinite_index_hits_the_limit() {
        let err = modular_orbifold_invariants(&[MobiusWord::a()], 500).unwrap_err();
        assert!(err.to_string().contains("enumeration did not close within max_cosets"));
    }
}
