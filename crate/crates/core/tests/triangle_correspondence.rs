use std::collections::{BTreeMap, BTreeSet};

use dessinator::dessin::{enumerate_dessins, Dessin, EnumerationOptions};
use dessinator::fpgroup::{
    abelianization, coset_enumeration, parse_presentation, reidemeister_schreier, CosetTable,
    DEFAULT_MAX_COSETS,
};
use dessinator::permcore::Perm;
use dessinator::triangle::{
    aut_normalizer_crosscheck, dessin_to_table, is_normal_regular, is_torsion_free_uniform,
    table_to_dessin, triangle_presentation, TriangleType, DEFAULT_CROSSCHECK_CAP,
};

fn all_dessins(max_m: usize) -> Vec<Dessin> {
    (1..=max_m)
        .flat_map(|m| enumerate_dessins(m, &EnumerationOptions::default()).unwrap())
        .collect()
}

#[test]
fn round_trip_through_tables() {
    for d in all_dessins(6) {
        let t = dessin_to_table(&d);
        assert!(t.verify(&triangle_presentation(&d.dessin_type()), &[]));
        let back = table_to_dessin(&t).unwrap();
        assert!(back.isomorphic(&d).is_some(), "{d:?}");
    }
}

#[test]
fn automorphisms_match_normalizer_quotients() {
    for d in all_dessins(6) {
        let (aut, norm) = aut_normalizer_crosscheck(&d, DEFAULT_CROSSCHECK_CAP).unwrap();
        assert_eq!(aut, norm, "{d:?}");
    }
}

#[test]
fn edge_stabilizers_enumerate_back_to_their_tables() {
    for d in all_dessins(5) {
        let t = dessin_to_table(&d);
        let pres = triangle_presentation(&d.dessin_type());
        let again = coset_enumeration(&pres, &t.subgroup_generators(), DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(again, t, "{d:?}");
    }
}

/// Canonical form of a transitive action up to relabeling: the least
/// breadth-first table over all base points.
fn canonical(actions: &[Perm]) -> Vec<Vec<usize>> {
    let names = vec!["x".to_string(), "y".to_string()];
    (0..actions[0].degree())
        .map(|b| {
            CosetTable::from_actions(names.clone(), actions.to_vec(), b)
                .unwrap()
                .actions()
                .iter()
                .map(|p| p.images().to_vec())
                .collect()
        })
        .min()
        .unwrap()
}

fn all_perms(m: usize) -> Vec<Perm> {
    fn rec(m: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == m {
            out.push(Perm::from_images(cur.clone()).unwrap());
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(m, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(m, &mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

#[test]
fn dessins_biject_with_subgroup_tables() {
    // Index-m transitive actions of Δ(a,b,c), found by testing every pair of
    // permutations against the relators, grouped by exact type.
    let types = [(2, 2, 2), (2, 3, 3), (3, 3, 3), (2, 4, 4), (2, 3, 4), (1, 2, 2), (4, 4, 2), (5, 5, 5)];
    let mut compared = 0;
    for m in 1..=5 {
        let perms = all_perms(m);
        let dessins = enumerate_dessins(m, &EnumerationOptions::default()).unwrap();
        for &(a, b, c) in &types {
            let pres = triangle_presentation(&TriangleType::new(a, b, c));
            let mut tables = BTreeSet::new();
            for x in &perms {
                for y in &perms {
                    let actions = vec![x.clone(), y.clone()];
                    let Ok(t) = CosetTable::from_actions(vec!["x".into(), "y".into()], actions.clone(), 0) else {
                        continue;
                    };
                    let d = table_to_dessin(&t).unwrap();
                    if t.verify(&pres, &[]) && d.dessin_type().triple() == (a, b, c) {
                        tables.insert(canonical(&actions));
                    }
                }
            }
            let from_dessins: BTreeSet<_> = dessins
                .iter()
                .filter(|d| d.dessin_type().triple() == (a, b, c))
                .map(|d| canonical(&[d.sigma().clone(), d.tau().clone()]))
                .collect();
            let matching = dessins.iter().filter(|d| d.dessin_type().triple() == (a, b, c)).count();
            assert_eq!(matching, from_dessins.len(), "distinct dessins give distinct tables");
            assert_eq!(tables, from_dessins, "m = {m}, type ({a},{b},{c})");
            compared += tables.len();
        }
    }
    assert!(compared >= 10, "only {compared} tables compared");
}

#[test]
fn regular_with_full_orders_is_uniform() {
    for d in all_dessins(6) {
        let t = d.dessin_type();
        let orders = (d.sigma().order(), d.tau().order(), d.faces().order());
        if is_normal_regular(&d) && orders == (t.a, t.b, t.c) {
            assert!(is_torsion_free_uniform(&d), "{d:?}");
        }
        assert_eq!(is_torsion_free_uniform(&d), d.is_uniform());
        assert_eq!(is_normal_regular(&d), d.classify().regular);
    }
}

#[test]
fn geometry_follows_the_sign_rule() {
    let mut seen = BTreeMap::new();
    for d in all_dessins(6) {
        let t = d.dessin_type();
        let s = 1.0 / t.a as f64 + 1.0 / t.b as f64 + 1.0 / t.c as f64 - 1.0;
        let label = if s.abs() < 1e-12 { "euclidean" } else if s > 0.0 { "spherical" } else { "hyperbolic" };
        assert_eq!(t.geometry.to_string(), label);
        *seen.entry(label).or_insert(0) += 1;
    }
    assert_eq!(seen.len(), 3);
}

#[test]
fn klein_quartic_surface_group() {
    // PSL(2,7) as a quotient of Δ(2,3,7); its regular action is a genus-3
    // dessin whose edge stabilizer is a torsion-free surface group.
    let psl = parse_presentation("< x y | x^2 y^3 (y*x)^7 [x,y]^4 >").unwrap();
    let regular = coset_enumeration(&psl, &[], DEFAULT_MAX_COSETS).unwrap();
    assert_eq!(regular.index(), 168);
    let d = table_to_dessin(&regular).unwrap();
    assert_eq!(d.dessin_type().triple(), (2, 3, 7));
    assert!(is_normal_regular(&d) && is_torsion_free_uniform(&d));
    let genus = d.genus();
    assert_eq!(genus, 3);

    let delta = triangle_presentation(&d.dessin_type());
    let table = dessin_to_table(&d);
    assert!(table.verify(&delta, &[]));
    let sub = reidemeister_schreier(&delta, &table).unwrap();
    assert_eq!(sub.presentation.generator_count(), 168 + 1);
    let ab = abelianization(&sub.presentation);
    assert_eq!(ab.free_rank, 2 * genus);
    assert!(ab.torsion.is_empty());
}
