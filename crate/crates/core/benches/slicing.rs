use std::fmt::Write;

use archslice::acme::{parse, ArchDescription};
use archslice::batch::{per_interface_criteria, slice_many_sequential};
use archslice::sadg::build_sadg;
use archslice::slicer::SliceDirection;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

/// `width` parallel pipelines of `depth` stages, each stage feeding the
/// next stage of its own pipeline and of its neighbour.
fn lattice(width: usize, depth: usize) -> ArchDescription {
    let mut src = String::from("System lattice = {\n");
    for w in 0..width {
        for d in 0..depth {
            writeln!(
                src,
                "Component s{w}_{d} = {{ Port a = {{ Properties {{ direction = \"in\"; }} }} \
                 Port b = {{ Properties {{ direction = \"in\"; }} }} \
                 Port o = {{ Properties {{ direction = \"out\"; }} }} \
                 Port x = {{ Properties {{ direction = \"out\"; }} }} }}"
            )
            .unwrap();
        }
    }
    for w in 0..width {
        for d in 1..depth {
            for side in ["a", "b"] {
                writeln!(
                    src,
                    "Connector p{side}{w}_{d} = {{ Role i = {{ Properties {{ direction = \"in\"; }} }} \
                     Role o = {{ Properties {{ direction = \"out\"; }} }} }}"
                )
                .unwrap();
            }
        }
    }
    src.push_str("Attachments wiring = {\n");
    for w in 0..width {
        for d in 1..depth {
            let n = (w + 1) % width;
            writeln!(src, "s{w}_{p}.o to pa{w}_{d}.i; s{w}_{d}.a to pa{w}_{d}.o;", p = d - 1).unwrap();
            writeln!(src, "s{n}_{p}.x to pb{w}_{d}.i; s{w}_{d}.b to pb{w}_{d}.o;", p = d - 1).unwrap();
        }
    }
    src.push_str("}\n}\n");
    parse(&src).expect("generated lattice parses")
}

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("slice_many");
    group.sample_size(10);
    for (width, depth) in [(4, 16), (8, 16)] {
        let desc = lattice(width, depth);
        let g = build_sadg(&desc).unwrap();
        let criteria = per_interface_criteria(&desc);
        let id = format!("{}v", g.vertices().len());
        group.bench_with_input(BenchmarkId::new("sequential", &id), &criteria, |b, cs| {
            b.iter(|| slice_many_sequential(&g, cs, SliceDirection::Backward))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", &id), &criteria, |b, cs| {
            b.iter(|| archslice::batch::slice_many_parallel(&g, cs, SliceDirection::Backward))
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
