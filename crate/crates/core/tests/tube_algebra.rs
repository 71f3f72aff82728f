//! Tube algebras: associativity, units, block counts, and the action on
//! center objects.

use gsnet_core::category::CategoryData;
use gsnet_core::center::CenterObject;
use gsnet_core::scalar::Scalar;
use gsnet_core::tube::tube_algebra;
use std::path::PathBuf;

fn load(name: &str) -> CategoryData {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/categories").join(name);
    CategoryData::load(&p).unwrap()
}

fn phase_simples(cat: &CategoryData, sector: usize) -> Vec<CenterObject> {
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
    let mut out = Vec::new();
    for a in cat.sector(sector) {
        let base = CenterObject::transparent_simple(cat, a);
        let total = menu.len().pow(strands.len() as u32);
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0..total {
            let mut x = mask;
            let mut phases = Vec::new();
            for &s in &strands {
                phases.push((s, menu[x % menu.len()].clone()));
                x /= menu.len();
            }
            let cand = base.clone().with_phases(cat, &phases);
            if cand.validate(cat).is_empty() {
                // dedupe by the phase signature actually applied
                let sig: Vec<String> = strands
                    .iter()
                    .map(|&s| {
                        (0..cat.simple_count())
                            .map(|w| format!("{:?}", cand.block(cat, s, w)))
                            .collect::<Vec<_>>()
                            .join("|")
                    })
                    .collect();
                if seen.insert(sig) {
                    out.push(cand);
                }
            }
        }
    }
    out
}

#[test]
fn vec_has_one_block() {
    let cat = load("vec.json");
    let t = tube_algebra(&cat, 0);
    assert_eq!(t.dim(), 1);
    assert_eq!(t.associativity_defects(), 0);
    assert_eq!(t.block_count(), 1);
}

#[test]
fn unit_acts_as_unit() {
    for name in ["vec_z2.json", "vec_z2_graded.json", "ising_z2.json"] {
        let cat = load(name);
        for g in cat.group.elements() {
            let t = tube_algebra(&cat, g);
            let u = t.unit_vector();
            for j in 0..t.dim() {
                let mut e = vec![Scalar::zero(); t.dim()];
                e[j] = Scalar::one();
                assert_eq!(t.multiply(&u, &e), e, "{name}: left unit fails");
                assert_eq!(t.multiply(&e, &u), e, "{name}: right unit fails");
            }
        }
    }
}

#[test]
fn tube_algebras_are_associative() {
    for name in ["vec_z2.json", "vec_z2_twisted_trivial.json", "vec_z2_graded.json", "ising_z2.json"] {
        let cat = load(name);
        for g in cat.group.elements() {
            let t = tube_algebra(&cat, g);
            assert_eq!(t.associativity_defects(), 0, "{name} sector {g}");
        }
    }
}

#[test]
fn toric_code_block_count() {
    let cat = load("vec_z2.json");
    let t = tube_algebra(&cat, 0);
    assert_eq!(t.dim(), 4);
    assert_eq!(t.block_count(), 4);
}

#[test]
fn double_semion_block_count() {
    let cat = load("vec_z2_twisted_trivial.json");
    let t = tube_algebra(&cat, 0);
    assert_eq!(t.block_count(), 4);
}

#[test]
fn graded_pointed_sectors_have_one_block() {
    for name in ["vec_z2_graded.json", "vec_s3.json", "vec_z2_twisted.json"] {
        let cat = load(name);
        for g in cat.group.elements() {
            let t = tube_algebra(&cat, g);
            assert_eq!(t.block_count(), 1, "{name} sector {g}");
        }
    }
}

#[test]
fn ising_sector_blocks_match_center_simples() {
    let cat = load("ising_z2.json");
    let t0 = tube_algebra(&cat, 0);
    assert_eq!(t0.block_count(), 4);
    let t1 = tube_algebra(&cat, 1);
    assert_eq!(t1.block_count(), 2);
}

#[test]
fn tube_action_is_an_algebra_map() {
    for (name, sector) in [("vec_z2.json", 0usize), ("vec_z2_twisted_trivial.json", 0), ("ising_z2.json", 0), ("ising_z2.json", 1)] {
        let cat = load(name);
        let t = tube_algebra(&cat, sector);
        for z in phase_simples(&cat, sector) {
            // act(t_i · t_j) = act(t_i) act(t_j) for all basis pairs
            for i in 0..t.dim() {
                let mut ei = vec![Scalar::zero(); t.dim()];
                ei[i] = Scalar::one();
                let mi = t.act_vec(&cat, &z, &ei);
                for j in 0..t.dim() {
                    let mut ej = vec![Scalar::zero(); t.dim()];
                    ej[j] = Scalar::one();
                    let mj = t.act_vec(&cat, &z, &ej);
                    let prod = t.multiply(&ei, &ej);
                    let lhs = t.act_vec(&cat, &z, &prod);
                    assert_eq!(lhs, mi.mul(&mj), "{name}: action fails homomorphism at ({i},{j})");
                }
            }
            // unit acts as identity
            let u = t.act_vec(&cat, &z, &t.unit_vector());
            assert!(u.is_identity(), "{name}: unit action");
        }
    }
}

#[test]
fn block_idempotents_from_characters() {
    for (name, sector, expect) in [
        ("vec_z2.json", 0usize, 4usize),
        ("vec_z2_twisted_trivial.json", 0, 4),
        ("ising_z2.json", 0, 4),
        ("ising_z2.json", 1, 2),
        ("vec_s3.json", 1, 1),
    ] {
        let cat = load(name);
        let t = tube_algebra(&cat, sector);
        let simples = phase_simples(&cat, sector);
        assert_eq!(simples.len(), expect, "{name}: simple count");
        let idems = t.block_idempotents(&cat, &simples).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(idems.len(), expect);
    }
}
