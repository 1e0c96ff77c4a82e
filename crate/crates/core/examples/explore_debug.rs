use qci_core::artranslate::{classify_component, explore_component};
use qci_core::qalgebra::AlgebraConfig;
use qci_core::scalars::make_field;
use qci_core::seeds::Opts;
use qci_core::verify::standard_modules;
use std::time::Instant;

fn main() {
    let f = make_field(103).unwrap();
    let q = f.primitive_root_of_unity(3).unwrap();
    let a = qci_core::qalgebra::build_algebra(AlgebraConfig::homogeneous(f, 3, 2, q).unwrap()).unwrap();
    let sm = standard_modules(&a).unwrap();
    let t0 = Instant::now();
    let frag = explore_component(&sm.rad, 3, &Opts::with_seed(1)).unwrap();
    println!("radA fragment: {:.1}s, {} vertices, {} sequences",
        t0.elapsed().as_secs_f64(), frag.vertices.len(), frag.sequences.len());
    for v in &frag.vertices {
        println!("  v{} dim={} dist={} periodic={:?}", v.id, v.dim, v.distance, v.periodic);
    }
    let ev = classify_component(&frag);
    println!("verdict: {:?}", ev.verdict);
}
