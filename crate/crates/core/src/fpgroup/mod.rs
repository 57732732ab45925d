//! Finitely presented groups: words, presentations, coset enumeration,
//! subgroup presentations and abelian invariants.

mod coset;
mod presentation;
mod schreier;
mod snf;
mod word;

pub use coset::{coset_enumeration, CosetTable, CosetTableFile, DEFAULT_MAX_COSETS};
pub use presentation::{parse_presentation, Presentation};
pub use schreier::{reidemeister_schreier, SubgroupPresentation};
pub use snf::{
    abelian_coordinates, abelianization, relation_matrix, smith_normal_form, AbelianCoordinates,
    Abelianization, SmithForm,
};
pub use word::Word;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FpError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("zero exponent at position {position}")]
    ZeroPower { position: usize },
    #[error("duplicate generator '{0}'")]
    DuplicateGenerator(String),
    #[error("expected {expected} generator columns, found {found}")]
    ColumnCount { expected: usize, found: usize },
    #[error("invalid coset table: {0}")]
    InvalidTable(String),
    #[error("enumeration did not close within max_cosets = {0}")]
    CosetLimit(usize),
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word_strategy(n: i32, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((1..=n, any::<bool>()), 0..max_len)
            .prop_map(|ls| Word::new(ls.into_iter().map(|(g, neg)| if neg { -g } else { g })))
    }

    proptest! {
        // Adding a consequence of the relators, or a new generator together
        // with a relator defining it, leaves the abelian invariants alone.
        #[test]
        fn tietze_moves_preserve_abelianization(
            rels in prop::collection::vec(word_strategy(3, 8), 1..4),
            defining in word_strategy(3, 6),
            conj in word_strategy(3, 4),
        ) {
            let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
            let p = Presentation::new(names.clone(), rels.clone()).unwrap();
            let base = abelianization(&p);

            let mut more = rels.clone();
            more.push(conj.conjugate(&rels[0]).concat(&rels[rels.len() - 1]));
            let q = Presentation::new(names.clone(), more).unwrap();
            prop_assert_eq!(&abelianization(&q), &base);

            let mut names4 = names;
            names4.push("d".into());
            let mut with_def = rels;
            with_def.push(Word::generator(3).inverse().concat(&defining));
            let r = Presentation::new(names4, with_def).unwrap();
            prop_assert_eq!(&abelianization(&r), &base);
        }
    }
}
