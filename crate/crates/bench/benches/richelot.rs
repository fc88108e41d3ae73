use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use richelot_bench::{point, triple};
use richelot_core::numeric::{build_s_basis, compute_periods, NumericConfig, ThetaChar, ThetaSeries};
use richelot_core::{RichelotData, C64};

fn exact(c: &mut Criterion) {
    let fs = triple();
    let a = point();
    c.bench_function("richelot_map", |b| b.iter(|| fs.richelot_map(black_box(&a)).unwrap()));
    c.bench_function("richelot_data_build", |b| b.iter(|| RichelotData::build(black_box(&fs))));
}

fn numeric(c: &mut Criterion) {
    let cfg = NumericConfig::default();
    let f = triple().to_c64().f;
    c.bench_function("compute_periods", |b| b.iter(|| compute_periods(black_box(&f), &cfg).unwrap()));
    let pd = compute_periods(&f, &cfg).unwrap();
    let ts = ThetaSeries::new(&pd.omega, 1e-13).unwrap();
    let z = [C64::new(0.1, 0.05), C64::new(-0.2, 0.03)];
    c.bench_function("theta", |b| b.iter(|| ts.eval(black_box(&z), ThetaChar::zero())));
    let sb = build_s_basis(&pd, &cfg).unwrap();
    c.bench_function("s_basis_eval", |b| b.iter(|| sb.eval(black_box(&z)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = exact, numeric
}
criterion_main!(benches);
