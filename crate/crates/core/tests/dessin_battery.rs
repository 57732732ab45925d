use dessinator::dessin::{enumerate_dessins, Dessin, EnumerationOptions};
use dessinator::permcore::Perm;

fn census(m: usize) -> Vec<Dessin> {
    let options = EnumerationOptions {
        threads: 4,
        ..EnumerationOptions::default()
    };
    enumerate_dessins(m, &options).unwrap()
}

/// Automorphisms by propagation: a commuting bijection of a transitive
/// pair is determined by the image of edge 0.
fn brute_aut_count(d: &Dessin) -> usize {
    let m = d.edge_count();
    let gens = [d.sigma(), d.tau()];
    (0..m)
        .filter(|&target| {
            let mut map = vec![usize::MAX; m];
            map[0] = target;
            let mut stack = vec![0];
            while let Some(e) = stack.pop() {
                for g in gens {
                    let (src, dst) = (g.apply(e), g.apply(map[e]));
                    if map[src] == usize::MAX {
                        map[src] = dst;
                        stack.push(src);
                    } else if map[src] != dst {
                        return false;
                    }
                }
            }
            Perm::from_images(map).is_ok()
        })
        .count()
}

#[test]
fn core_battery_through_six_edges() {
    let mut total = 0;
    for m in 1..=6 {
        for d in census(m) {
            total += 1;
            let p = d.passport();
            for degrees in [&p.black_degrees, &p.white_degrees, &p.face_degrees] {
                assert_eq!(degrees.iter().sum::<usize>(), m, "{d:?}");
            }
            // V - E + F = 2 - 2g with V = black + white vertices
            let chi = (p.black_degrees.len() + p.white_degrees.len() + p.face_degrees.len()) as i64 - m as i64;
            assert_eq!(chi % 2, 0);
            assert_eq!(chi, 2 - 2 * d.genus() as i64);

            let aut = d.aut_plus().len();
            assert_eq!(aut, brute_aut_count(&d), "{d:?}");
            assert_eq!(m % aut, 0);
            let by_monodromy = d.monodromy_order() == m.into();
            let by_aut = aut == m;
            assert_eq!(by_monodromy, by_aut, "{d:?}");
            assert_eq!(d.classify().regular, by_aut);
        }
    }
    assert!(total < 10_000, "{total} classes");
}

#[test]
fn chirality_through_eight_edges() {
    let mut chiral = 0;
    let mut regular_reflexive = 0;
    let mut chiral_regular = 0;
    for m in 1..=8 {
        for d in census(m) {
            let c = d.classify();
            let mirror = d.mirror();
            let cm = mirror.classify();
            assert_eq!(c.regular, cm.regular);
            assert_eq!(d.genus(), mirror.genus());
            assert_eq!(d.passport(), mirror.passport());
            assert_ne!(c.chiral, c.reflexive);
            assert_eq!(c.chiral, d.isomorphic(&mirror).is_none());
            chiral += usize::from(c.chiral);
            regular_reflexive += usize::from(c.regular && c.reflexive);
            chiral_regular += usize::from(c.regular && c.chiral);
        }
    }
    assert!(chiral > 0);
    assert!(regular_reflexive > 0);
    // every group of order at most 8 has an automorphism inverting a
    // generating pair, so regular dessins this small are all reflexive
    assert_eq!(chiral_regular, 0);
}

#[test]
fn smallest_chiral_dessin_has_five_edges() {
    for m in 1..=4 {
        assert!(census(m).iter().all(|d| d.classify().reflexive), "m = {m}");
    }
    let d = Dessin::from_cycles(5, "(1 2)(3 4)", "(0 1 2 3)").unwrap();
    assert!(d.classify().chiral);
    assert!(census(5).iter().any(|e| e.isomorphic(&d).is_some()));
}
