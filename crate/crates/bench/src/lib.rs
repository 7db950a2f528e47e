//! Fixtures shared by the benchmarks.

use twistgen_core::report::GenSet;
use twistgen_core::search::{Packing, Rep};
use twistgen_core::{Evaluator, Model};

/// Packed generator keys of a standard generating set.
pub fn generator_keys(genus: usize, set: GenSet, rep: Rep) -> (Packing, Vec<u128>) {
    let model = Model::new(genus).expect("odd genus");
    let mut ev = Evaluator::new(&model);
    let gens = set.build(&mut ev).expect("standard generators");
    let packing = Packing::for_genus(rep, genus).expect("packable");
    let keys = gens.iter().map(|g| packing.key(&g.class)).collect();
    (packing, keys)
}
