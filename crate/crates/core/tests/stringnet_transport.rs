//! Functoriality of the string-net transports: flip/gauge maps compose as
//! the move relations demand, and cloaking projectors are idempotent.

use gsnet_core::category::CategoryData;
use gsnet_core::group::FiniteGroup;
use gsnet_core::stringnet::{
    flip_map, gauge_map, pi_projector, sn_basis, sn_dim, transport, BoundaryValue,
};
use gsnet_core::surface::{build_surface, GTriangulation, Move};
use std::path::PathBuf;

fn load(name: &str) -> CategoryData {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/categories").join(name);
    CategoryData::load(&p).unwrap()
}

fn all_categories() -> Vec<CategoryData> {
    ["vec.json", "vec_z2.json", "vec_z2_graded.json", "vec_z2_twisted.json", "ising_z2.json"]
        .iter()
        .map(|n| load(n))
        .collect()
}

/// A torus compatible with the category's group (all labels trivial), with
/// two marked points so gauge moves have singly-traversed face edges.
fn torus2(cat: &CategoryData) -> GTriangulation {
    build_surface(&cat.group, 1, &[], 2).unwrap()
}

#[test]
fn sn_dims_match_expectations() {
    let vec = load("vec.json");
    let t = build_surface(&vec.group, 1, &[], 1).unwrap();
    assert_eq!(sn_dim(&vec, &t, &BoundaryValue::empty()), 1);

    let z2 = load("vec_z2.json");
    let t = build_surface(&z2.group, 1, &[], 1).unwrap();
    assert_eq!(sn_dim(&z2, &t, &BoundaryValue::empty()), 4);

    let z2g = load("vec_z2_graded.json");
    let cyl = build_surface(&z2g.group, 0, &[1, 1], 0).unwrap();
    let bv = BoundaryValue::simples(&[1, 1]);
    assert_eq!(sn_dim(&z2g, &cyl, &bv), 1);
}

#[test]
fn ising_torus_dimension() {
    // Theta-shaped dual graph; admissible Ising colorings of three edges.
    let ising = load("ising_z2.json");
    let t = build_surface(&ising.group, 1, &[], 1).unwrap();
    let d = sn_dim(&ising, &t, &BoundaryValue::empty());
    // Brute force: trivially labeled edges only admit neutral-sector colors.
    let mut expect = 0u32;
    for a in ising.sector(0) {
        for b in ising.sector(0) {
            for c in ising.sector(0) {
                expect += ising.coupling_dim(a, b, c) * ising.coupling_dim(ising.dual(c), ising.dual(b), ising.dual(a));
            }
        }
    }
    assert_eq!(d as u32, expect);
    assert_eq!(d, 4);
}

#[test]
fn flip_is_its_own_inverse_gp1() {
    for cat in all_categories() {
        let tri = torus2(&cat);
        let bv = BoundaryValue::empty();
        for e in 0..tri.edges.len() {
            let Ok(there) = flip_map(&cat, &tri, &bv, e) else { continue };
            let back = flip_map(&cat, &there.dst.tri, &bv, e).unwrap();
            let round = back.compose(&there);
            assert!(
                round.mat.is_identity(),
                "{}: flip round trip at edge {e} is not the identity",
                cat.name
            );
        }
    }
}

#[test]
fn flips_preserve_dimension() {
    for cat in all_categories() {
        let tri = torus2(&cat);
        let bv = BoundaryValue::empty();
        for e in 0..tri.edges.len() {
            if let Ok(m) = flip_map(&cat, &tri, &bv, e) {
                assert_eq!(m.src.states.len(), m.dst.states.len());
                assert_eq!(m.mat.rank(), m.src.states.len(), "{}: flip not invertible", cat.name);
            }
        }
    }
}

#[test]
fn commuting_flips_gp2() {
    for cat in all_categories() {
        let triv_disk = build_surface(&cat.group, 0, &[cat.group.identity], 4).unwrap();
        let bv = BoundaryValue::simples(&[cat.unit()]);
        let tri = triv_disk;
        let flippable: Vec<usize> = (0..tri.edges.len()).filter(|&e| tri.flip(e).is_ok()).collect();
        let mut checked = 0;
        for &e in &flippable {
            for &f in &flippable {
                if e == f {
                    continue;
                }
                let de = [tri.edges[e].from, tri.edges[e].to];
                let df = [tri.edges[f].from, tri.edges[f].to];
                if de.iter().any(|v| df.contains(v)) {
                    continue;
                }
                let p1 = transport(&cat, &tri, &bv, &[Move::Flip(e), Move::Flip(f)]).unwrap();
                let p2 = transport(&cat, &tri, &bv, &[Move::Flip(f), Move::Flip(e)]).unwrap();
                assert_eq!(p1.dst.tri.canonical_key(), p2.dst.tri.canonical_key());
                assert_eq!(p1.mat, p2.mat, "{}: disjoint flips do not commute", cat.name);
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn pentagon_cells_gp3() {
    // Alternating flips along two edges sharing one endpoint close up after
    // five moves; the transported matrices must compose to the identity.
    for cat in all_categories() {
        let tri = build_surface(&cat.group, 0, &[cat.group.identity], 3).unwrap();
        let bv = BoundaryValue::simples(&[cat.unit()]);
        let mut found = 0;
        for e in 0..tri.edges.len() {
            for f in 0..tri.edges.len() {
                if e == f {
                    continue;
                }
                // five alternating flips: e, f, e, f, e
                let path = [Move::Flip(e), Move::Flip(f), Move::Flip(e), Move::Flip(f), Move::Flip(e)];
                let mut cur = tri.clone();
                let mut ok = true;
                for m in path {
                    match cur.apply(m) {
                        Ok(t) => cur = t,
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok || cur.canonical_key() != tri.canonical_key() {
                    continue;
                }
                // A genuine pentagon cell: the composite transport must be
                // the identity on the nose when bases align.
                let t = transport(&cat, &tri, &bv, &path).unwrap();
                if t.dst.states == t.src.states {
                    assert!(
                        t.mat.is_identity(),
                        "{}: pentagon cycle at ({e},{f}) is not the identity",
                        cat.name
                    );
                    found += 1;
                }
            }
        }
        assert!(found > 0, "{}: no pentagon cell found on the test surface", cat.name);
    }
}

#[test]
fn cloaking_projector_is_idempotent() {
    for cat in all_categories() {
        let tri = torus2(&cat);
        let bv = BoundaryValue::empty();
        let v = tri.internal_vertices()[0];
        let p = pi_projector(&cat, &tri, &bv, v, cat.group.identity).unwrap();
        assert_eq!(p.src.states, p.dst.states);
        assert_eq!(p.mat.mul(&p.mat), p.mat, "{}: Π² ≠ Π", cat.name);
    }
}

#[test]
fn cloaking_projector_is_identity_for_vec() {
    let cat = load("vec.json");
    let tri = torus2(&cat);
    let bv = BoundaryValue::empty();
    for v in tri.internal_vertices() {
        let p = pi_projector(&cat, &tri, &bv, v, 0).unwrap();
        assert!(p.mat.is_identity());
    }
}

#[test]
fn gauge_group_law_gp6() {
    for name in ["vec_z2_graded.json", "vec_s3.json", "vec_z2_twisted.json"] {
        let cat = load(name);
        let tri = torus2(&cat);
        let bv = BoundaryValue::empty();
        let v = tri.internal_vertices()[0];
        for g in cat.group.elements() {
            for h in cat.group.elements() {
                let mg = gauge_map(&cat, &tri, &bv, v, g).unwrap();
                let mh = gauge_map(&cat, &mg.dst.tri, &bv, v, h).unwrap();
                let composite = mh.compose(&mg);
                let direct = gauge_map(&cat, &tri, &bv, v, cat.group.mul(h, g)).unwrap();
                assert_eq!(
                    composite.dst.tri.canonical_key(),
                    direct.dst.tri.canonical_key(),
                    "{name}: targets disagree"
                );
                assert_eq!(composite.mat, direct.mat, "{name}: gauge law fails at ({g},{h})");
            }
        }
    }
}

#[test]
fn gauge_maps_restrict_to_isomorphisms() {
    // On the cloaked subspace (the image of Π at every marked point) each
    // gauge map is injective, with image the cloaked subspace of the target.
    for cat in all_categories() {
        let tri = torus2(&cat);
        let bv = BoundaryValue::empty();
        let vs = tri.internal_vertices();
        let cloak = |t: &gsnet_core::surface::GTriangulation| {
            let mut p: Option<gsnet_core::stringnet::SnMap> = None;
            for &v in &vs {
                let step = pi_projector(&cat, t, &bv, v, cat.group.identity).unwrap();
                p = Some(match p {
                    None => step,
                    Some(prev) => step.compose(&prev),
                });
            }
            p.unwrap()
        };
        let p_src = cloak(&tri);
        let rank_src = p_src.mat.rank();
        let v = vs[0];
        for g in cat.group.elements() {
            let m = gauge_map(&cat, &tri, &bv, v, g).unwrap();
            let restricted = m.mat.mul(&p_src.mat);
            assert_eq!(
                restricted.rank(),
                rank_src,
                "{}: gauge map not injective on the cloaked subspace",
                cat.name
            );
            let p_dst = cloak(&m.dst.tri);
            assert_eq!(p_dst.mat.mul(&restricted), restricted, "{}: image escapes the cloaked subspace", cat.name);
        }
    }
}

#[test]
fn gauge_flip_commute_gp4() {
    for name in ["vec_z2_graded.json", "ising_z2.json"] {
        let cat = load(name);
        let tri = torus2(&cat);
        let bv = BoundaryValue::empty();
        let v = tri.internal_vertices()[0];
        let g = 1;
        let mut checked = 0;
        for e in 0..tri.edges.len() {
            if tri.flip(e).is_err() {
                continue;
            }
            let p1 = transport(&cat, &tri, &bv, &[Move::Gauge(v, g), Move::Flip(e)]).unwrap();
            let p2 = transport(&cat, &tri, &bv, &[Move::Flip(e), Move::Gauge(v, g)]).unwrap();
            assert_eq!(p1.dst.tri.canonical_key(), p2.dst.tri.canonical_key());
            assert_eq!(p1.mat, p2.mat, "{name}: gauge and flip fail to commute at edge {e}");
            checked += 1;
        }
        assert!(checked > 0);
    }
}

#[test]
fn distinct_vertex_gauges_commute_gp5() {
    for name in ["vec_z2_graded.json", "vec_s3.json"] {
        let cat = load(name);
        let tri = torus2(&cat);
        let bv = BoundaryValue::empty();
        let vs = tri.internal_vertices();
        assert!(vs.len() >= 2);
        let (a, b) = (vs[0], vs[1]);
        for g in cat.group.elements() {
            for h in cat.group.elements() {
                let p1 = transport(&cat, &tri, &bv, &[Move::Gauge(a, g), Move::Gauge(b, h)]).unwrap();
                let p2 = transport(&cat, &tri, &bv, &[Move::Gauge(b, h), Move::Gauge(a, g)]).unwrap();
                assert_eq!(p1.mat, p2.mat, "{name}: gauges at distinct vertices fail to commute");
            }
        }
    }
}

#[test]
fn cloaked_dimension_invariant_under_moves() {
    // Bare dimensions change across gauge labels; the invariant is the rank
    // of the full cloaking projector.
    for cat in all_categories() {
        let tri = torus2(&cat);
        let bv = BoundaryValue::empty();
        let cloaked_rank = |t: &gsnet_core::surface::GTriangulation| {
            let mut acc: Option<gsnet_core::stringnet::SnMap> = None;
            for v in t.internal_vertices() {
                let step = pi_projector(&cat, t, &bv, v, cat.group.identity).unwrap();
                acc = Some(match acc {
                    None => step,
                    Some(prev) => step.compose(&prev),
                });
            }
            acc.unwrap().mat.rank()
        };
        let d0 = cloaked_rank(&tri);
        assert!(d0 > 0);
        for m in tri.available_moves() {
            let t2 = tri.apply(m).unwrap();
            assert_eq!(cloaked_rank(&t2), d0, "{}: {m:?} changed the cloaked rank", cat.name);
        }
        // Flips preserve even the bare dimension.
        let bare = sn_dim(&cat, &tri, &bv);
        for e in 0..tri.edges.len() {
            if let Ok(t2) = tri.flip(e) {
                assert_eq!(sn_dim(&cat, &t2, &bv), bare);
            }
        }
    }
}

#[test]
fn empty_path_transport_is_identity() {
    let cat = load("vec_z2.json");
    let tri = torus2(&cat);
    let bv = BoundaryValue::empty();
    let t = transport(&cat, &tri, &bv, &[]).unwrap();
    assert!(t.mat.is_identity());
    let _ = sn_basis(&cat, &tri, &bv);
}
