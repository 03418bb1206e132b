use criterion::{black_box, criterion_group, criterion_main, Criterion};

use lantern_core::boxes::{cancel_pure, CancelOrder};
use lantern_core::farey::farey_path;
use lantern_core::heegaard::{build_diagram, hf_invariants, niceify, region_list};
use lantern_core::library::{cfd_via_twisting, library_graph, Flavor, FramingClass, LibrarySpec};
use lantern_core::pairing::{contact_vanishes, PairingSpec};

fn bench_farey(c: &mut Criterion) {
    c.bench_function("farey_path_377_233", |b| {
        b.iter(|| farey_path(black_box(377), black_box(233)).unwrap())
    });
}

fn bench_pairing(c: &mut Criterion) {
    c.bench_function("pairing_2222_nb3", |b| {
        b.iter(|| {
            let spec = PairingSpec::new(black_box([2, 2, 2, 2]), black_box(-3)).unwrap();
            contact_vanishes(&spec).unwrap()
        })
    });
}

fn bench_twisting_reduction(c: &mut Criterion) {
    let a = library_graph(LibrarySpec {
        n: 4,
        m: 4,
        framing: FramingClass::IIii,
        flavor: Flavor::TypeA,
    })
    .unwrap()
    .unwrap_a();
    c.bench_function("cfd_via_twisting_4x4", |b| {
        b.iter(|| cfd_via_twisting(black_box(&a), true).unwrap())
    });
    let d = cfd_via_twisting(&a, false).unwrap();
    c.bench_function("cancel_pure_4x4", |b| {
        b.iter(|| cancel_pure(black_box(&d), &[], &CancelOrder::Lexicographic))
    });
}

fn bench_nice_diagram(c: &mut Criterion) {
    let rl = region_list(13, 8, 8, 5).unwrap();
    c.bench_function("build_and_niceify_13_8_8_5", |b| {
        b.iter(|| niceify(build_diagram(black_box(&rl)).unwrap()).unwrap())
    });
    let (nice, _) = niceify(build_diagram(&rl).unwrap()).unwrap();
    c.bench_function("hf_invariants_13_8_8_5", |b| {
        b.iter(|| hf_invariants(black_box(&nice)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_farey,
    bench_pairing,
    bench_twisting_reduction,
    bench_nice_diagram
);
criterion_main!(benches);
