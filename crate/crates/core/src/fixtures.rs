//! A deterministic corpus of small closed triangulations for cross-checks.

use crate::triang::{
    generate_bipyramid_lens_space, generate_lens_space, pachner_23, parse_triangulation, Gluing, Perm4, Triangulation,
};
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub triangulation: Triangulation,
}

const IDENTITY_DOUBLE: &str = "tets 2\n1:0123 1:0123 1:0123 1:0123\n0:0123 0:0123 0:0123 0:0123\n";

/// Closed triangulations with at most `max_tets` tetrahedra: layered and
/// two-vertex lens spaces, the four-vertex double of a tetrahedron, 2-3
/// descendants of these, and connected random gluings that pass the
/// manifold check. Names are unique and the order is fixed.
pub fn small_closed(max_tets: usize) -> Vec<Fixture> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |out: &mut Vec<Fixture>, name: String, t: Triangulation| {
        if t.size() <= max_tets && seen.insert(t.to_tri_string()) {
            out.push(Fixture { name, triangulation: t });
        }
    };

    for p in 1..=40u64 {
        for q in 0..=p / 2 {
            let coprime = if p == 1 { q == 0 } else { q > 0 && q.gcd(&p) == 1 };
            if !coprime {
                continue;
            }
            let t = generate_lens_space(p, q as i64).expect("valid lens parameters");
            push(&mut out, format!("lens_{p}_{q}"), t);
        }
    }
    for p in 2..=max_tets as u64 {
        for q in 1..=p / 2 {
            if q.gcd(&p) == 1 {
                let t = generate_bipyramid_lens_space(p, q as i64).expect("valid lens parameters");
                push(&mut out, format!("bipyramid_{p}_{q}"), t);
            }
        }
    }
    push(
        &mut out,
        "tet_double".to_string(),
        parse_triangulation(IDENTITY_DOUBLE).expect("valid fixture"),
    );

    let bases: Vec<Fixture> = out.clone();
    for f in bases {
        let t = &f.triangulation;
        if let Some(tri) = (0..t.triangle_count()).find(|&tri| pachner_23(t, tri).is_ok()) {
            let moved = pachner_23(t, tri).expect("move checked above");
            push(&mut out, format!("{}_23", f.name), moved);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x7e4);
    let mut found = 0;
    for attempt in 0..4000 {
        if found == 10 {
            break;
        }
        let n = 2 + attempt % 2;
        if let Some(t) = random_closed_manifold(n, &mut rng) {
            let before = out.len();
            push(&mut out, format!("random_{n}_{attempt}"), t);
            found += (out.len() > before) as usize;
        }
    }
    out
}

/// Random pairing of the `4n` facets with random gluing maps; `None` unless
/// the result is a connected closed 3-manifold.
fn random_closed_manifold(n: usize, rng: &mut impl Rng) -> Option<Triangulation> {
    let mut facets: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..4).map(move |f| (t, f))).collect();
    facets.shuffle(rng);
    let all: Vec<Perm4> = (0..24u32)
        .filter_map(|code| {
            let mut rest = vec![0u8, 1, 2, 3];
            let mut images = [0u8; 4];
            let mut c = code;
            for (i, slot) in images.iter_mut().enumerate() {
                let k = (c % (4 - i as u32)) as usize;
                c /= 4 - i as u32;
                *slot = rest.remove(k);
            }
            Perm4::new(images)
        })
        .collect();
    let mut gluings = vec![[None; 4]; n];
    for pair in facets.chunks(2) {
        let ((t0, f0), (t1, f1)) = (pair[0], pair[1]);
        let choices: Vec<Perm4> = all.iter().copied().filter(|p| p.apply(f0) == f1).collect();
        let p = *choices.choose(rng)?;
        gluings[t0][f0] = Some(Gluing::new(t1, p));
        gluings[t1][f1] = Some(Gluing::new(t0, p.inverse()));
    }
    let t = Triangulation::new(gluings).ok()?;
    let diag = t.check_closed_manifold().ok()?;
    (diag.components == 1).then_some(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_large_and_varied() {
        let all = small_closed(5);
        assert!(all.len() >= 30, "only {} fixtures", all.len());
        assert!(all.iter().any(|f| f.triangulation.vertex_count() > 1));
        assert!(all.iter().any(|f| f.name.starts_with("random_")));
        for f in &all {
            assert!(f.triangulation.size() <= 5);
            f.triangulation.check_closed_manifold().unwrap();
        }
        let names: BTreeSet<_> = all.iter().map(|f| &f.name).collect();
        assert_eq!(names.len(), all.len());
    }
}
