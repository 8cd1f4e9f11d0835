//! The group toolkit on its own: phase-exact products, reduced row echelon
//! form, membership, intersections and lexicographic minima.

use limdd::pauli::{intersect_isomorphism_sets, intersect_stabilizer_groups, lex_min, GeneratorSet, PauliLim};

fn main() {
    let x: PauliLim = "XY".parse().unwrap();
    let z: PauliLim = "ZZ".parse().unwrap();
    println!("XY * ZZ = {}", x * z);

    let g = GeneratorSet::parse(3, &["XXI", "IXX", "-ZZZ"]).unwrap();
    println!("group {g}, rref {}", g.rref().unwrap());
    for p in ["XIX", "-XIX", "YYX"] {
        println!("  contains {p}: {}", g.contains(&p.parse().unwrap()).unwrap());
    }

    let h = GeneratorSet::parse(3, &["XIX", "ZZZ"]).unwrap();
    println!("intersection with {h}: {}", intersect_stabilizer_groups(&g, &h).unwrap());

    let a: PauliLim = "-i*YZX".parse().unwrap();
    println!("lex-min of {a} over both groups: {}", lex_min(&g, &h, &a).unwrap());

    let id = PauliLim::identity(3);
    match intersect_isomorphism_sets(&id, &g, &"ZII".parse().unwrap(), &h).unwrap() {
        Some((rep, grp)) => println!("cosets meet at {rep} + {grp}"),
        None => println!("cosets are disjoint"),
    }
}
