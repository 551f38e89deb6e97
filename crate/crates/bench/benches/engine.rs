use criterion::{criterion_group, criterion_main, Criterion};
use qorbit_core::ere::Presentation;
use qorbit_core::orbit::{quotient_basis, OrbitSpec};
use qorbit_core::scalar::{rat, RatFn, Rational, Specialization, Sym};
use qorbit_core::theta::{mu_symbols, theta_t, Composition};

fn ere(c: &mut Criterion) {
    let sym = Specialization::symbolic();
    let point = sym.clone().with(Sym::Q, rat(3, 2)).with(Sym::T, rat(2, 1));
    let mut g = c.benchmark_group("ere");
    g.sample_size(10);
    g.bench_function("n2_d4_symbolic", |b| b.iter(|| Presentation::<RatFn>::ere(2, 4, &sym).unwrap().coranks()));
    g.bench_function("n2_d4_rational", |b| b.iter(|| Presentation::<Rational>::ere(2, 4, &point).unwrap().coranks()));
    g.bench_function("n3_d3_symbolic", |b| b.iter(|| Presentation::<RatFn>::ere(3, 3, &sym).unwrap().coranks()));
    g.finish();
}

fn orbit(c: &mut Criterion) {
    let spec = OrbitSpec::new(Composition::new(vec![1, 1]).unwrap(), vec![rat(0, 1), rat(1, 1)]).unwrap();
    let mut g = c.benchmark_group("orbit");
    g.sample_size(10);
    g.bench_function("n2_11_d4", |b| b.iter(|| quotient_basis::<RatFn>(&spec, 4, 1).unwrap().profile()));
    g.finish();
}

fn theta(c: &mut Criterion) {
    let comp = Composition::new(vec![2, 2, 1]).unwrap();
    let mu = mu_symbols(3);
    c.bench_function("theta_t_221_m6", |b| b.iter(|| theta_t(&comp.nhats(), &mu, 6).unwrap()));
}

criterion_group!(benches, ere, orbit, theta);
criterion_main!(benches);
