//! Half-braiding validation and center hom spaces.

use gsnet_core::category::CategoryData;
use gsnet_core::center::{hom_center_dim, hom_projector, CenterObject};
use gsnet_core::scalar::Scalar;
use std::path::PathBuf;

fn load(name: &str) -> CategoryData {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/categories").join(name);
    CategoryData::load(&p).unwrap()
}

/// All one-component center objects with scalar braiding phases drawn from a
/// small cyclotomic menu, filtered by the hexagon validator. For the bundled
/// categories this enumerates every simple center object.
fn phase_simples(cat: &CategoryData) -> Vec<CenterObject> {
    let mut out = Vec::new();
    let menu: Vec<Scalar> = vec![
        Scalar::from_integer(1),
        Scalar::from_integer(-1),
        Scalar::root_of_unity(4, 1),
        Scalar::root_of_unity(4, 3),
    ];
    let strands: Vec<usize> = cat
        .sector(cat.group.identity)
        .into_iter()
        .filter(|&i| i != cat.unit())
        .collect();
    for a in 0..cat.simple_count() {
        let base = CenterObject::transparent_simple(cat, a);
        // assign one phase per strand
        let k = strands.len();
        let total = menu.len().pow(k as u32);
        for mask in 0..total {
            let mut x = mask;
            let mut phases = Vec::new();
            for &s in &strands {
                phases.push((s, menu[x % menu.len()].clone()));
                x /= menu.len();
            }
            let cand = base.clone().with_phases(cat, &phases);
            if cand.validate(cat).is_empty() {
                let mut named = cand;
                named.name = format!("{}_{}", cat.simples[a].name, mask);
                out.push(named);
            }
        }
    }
    out
}

#[test]
fn unit_object_is_valid_everywhere() {
    for name in [
        "vec.json",
        "vec_z2.json",
        "vec_z2_graded.json",
        "vec_z2_twisted.json",
        "vec_z2_twisted_trivial.json",
        "vec_s3.json",
        "ising_z2.json",
    ] {
        let cat = load(name);
        let unit = CenterObject::transparent_simple(&cat, cat.unit());
        assert!(unit.validate(&cat).is_empty(), "{name}: unit must be a center object");
        assert_eq!(hom_center_dim(&cat, &unit, &unit), 1, "{name}: hom(1,1) = 1");
    }
}

#[test]
fn toric_code_center_has_four_simples() {
    let cat = load("vec_z2.json");
    let simples = phase_simples(&cat);
    assert_eq!(simples.len(), 4);
    // pairwise hom dims form the identity matrix
    for (i, a) in simples.iter().enumerate() {
        for (j, b) in simples.iter().enumerate() {
            assert_eq!(hom_center_dim(&cat, a, b), usize::from(i == j));
        }
    }
}

#[test]
fn double_semion_phases_are_imaginary() {
    let cat = load("vec_z2_twisted_trivial.json");
    let simples = phase_simples(&cat);
    assert_eq!(simples.len(), 4);
    // The x-based simples must carry ±i phases; the sign square −1.
    let mut semion_phases = 0;
    for z in &simples {
        if z.mult[1] == 1 {
            let blk = z.block(&cat, 1, 0);
            let lam = blk.get(0, 0).clone();
            assert_eq!(lam.mul(&lam), Scalar::from_integer(-1), "semion braiding squares to -1");
            semion_phases += 1;
        }
    }
    assert_eq!(semion_phases, 2);
    // γ_{x,x} = −1 is a valid half-braiding on the untwisted category but not
    // on the twisted one.
    let untwisted = load("vec_z2.json");
    let minus = CenterObject::transparent_simple(&untwisted, 1)
        .with_phases(&untwisted, &[(1, Scalar::from_integer(-1))]);
    assert!(minus.validate(&untwisted).is_empty());
    let minus_tw = CenterObject::transparent_simple(&cat, 1)
        .with_phases(&cat, &[(1, Scalar::from_integer(-1))]);
    assert!(!minus_tw.validate(&cat).is_empty());
}

#[test]
fn random_blocks_fail_validation() {
    let cat = load("vec_z2.json");
    let bad = CenterObject::transparent_simple(&cat, 1)
        .with_phases(&cat, &[(1, Scalar::from_integer(3))]);
    assert!(!bad.validate(&cat).is_empty(), "a non-solution block must be flagged");
}

#[test]
fn graded_pointed_categories_have_one_simple_per_sector() {
    for name in ["vec_z2_graded.json", "vec_s3.json", "vec_z2_twisted.json"] {
        let cat = load(name);
        for g in cat.group.elements() {
            for a in cat.sector(g) {
                let z = CenterObject::transparent_simple(&cat, a);
                assert!(z.validate(&cat).is_empty(), "{name}: transparent x_{g}");
                assert_eq!(hom_center_dim(&cat, &z, &z), 1);
            }
        }
    }
}

#[test]
fn ising_center_sector_counts() {
    let cat = load("ising_z2.json");
    let simples = phase_simples(&cat);
    let sector0: Vec<_> = simples.iter().filter(|z| z.grade == 0).collect();
    let sector1: Vec<_> = simples.iter().filter(|z| z.grade == 1).collect();
    assert_eq!(sector0.len(), 4, "neutral-sector simples");
    assert_eq!(sector1.len(), 2, "sigma-sector simples");
    // Orthonormality of hom dims within each sector.
    for set in [&sector0, &sector1] {
        for (i, a) in set.iter().enumerate() {
            for (j, b) in set.iter().enumerate() {
                assert_eq!(hom_center_dim(&cat, a, b), usize::from(i == j));
            }
        }
    }
}

#[test]
fn hom_projector_is_idempotent() {
    for name in ["vec_z2.json", "vec_z2_twisted_trivial.json", "ising_z2.json"] {
        let cat = load(name);
        let simples = phase_simples(&cat);
        for a in &simples {
            for b in &simples {
                if a.grade != b.grade {
                    continue;
                }
                let p = hom_projector(&cat, a, b);
                assert_eq!(p.mul(&p), p, "{name}: hom projector not idempotent");
                // trace equals rank for idempotents
                let tr = p.trace();
                assert_eq!(tr, Scalar::from_integer(p.rank() as i64), "{name}: trace ≠ rank");
            }
        }
    }
}
