use gsnet_core::category::CategoryData;
use gsnet_core::center::CenterObject;
use gsnet_core::scalar::Scalar;
use gsnet_core::tube::tube_algebra;
use std::path::PathBuf;

fn main() {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/categories/vec_z2.json");
    let cat = CategoryData::load(&p).unwrap();
    let t = tube_algebra(&cat, 0);
    println!("basis: {:?}", t.basis);
    let zc = t.center_basis();
    println!("center dim: {}", zc.len());
    for (k, z) in zc.iter().enumerate() {
        println!("z{k} = {:?}", z);
    }
    // four simples
    let mk = |a: usize, phase: i64| {
        CenterObject::transparent_simple(&cat, a)
            .with_phases(&cat, &[(1, Scalar::from_integer(phase))])
    };
    for (name, z) in [("1+", mk(0, 1)), ("1-", mk(0, -1)), ("x+", mk(1, 1)), ("x-", mk(1, -1))] {
        let chars: Vec<String> = zc
            .iter()
            .map(|v| format!("{}", t.character(&cat, &z, v)))
            .collect();
        println!("{name}: {:?}  valid={}", chars, z.validate(&cat).is_empty());
    }
}
