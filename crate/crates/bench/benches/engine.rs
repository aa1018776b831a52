use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nilgcs::ce::betti_numbers;
use nilgcs::semiabelian::{search_semi_abelian, symplectic_semi_abelian};
use nilgcs::{parse_salamon, DgaPresentation};
use nilgcs_bench::structure;

fn algebra(c: &mut Criterion) {
    c.bench_function("parse and check Jacobi, 3-step 6-dim", |b| {
        b.iter(|| parse_salamon(black_box("0,0,0,12,14+23,13+42")).unwrap())
    });
    let g = parse_salamon("0,0,0,0,12,14+25").unwrap();
    c.bench_function("CE Betti numbers, 6-dim", |b| b.iter(|| betti_numbers(black_box(&g))));
}

fn dga(c: &mut Criterion) {
    let iwasawa = structure("iwasawa", "parallelizable");
    c.bench_function("DGA presentation, Iwasawa", |b| b.iter(|| DgaPresentation::new(black_box(&iwasawa))));
    let dga = DgaPresentation::new(&iwasawa);
    c.bench_function("DGA Betti numbers, Iwasawa", |b| b.iter(|| dga.betti_numbers().unwrap()));
}

fn searches(c: &mut Criterion) {
    let filiform = structure("filiform-4", "type-one");
    c.bench_function("semi-abelian search, filiform (impossible)", |b| {
        b.iter(|| search_semi_abelian(black_box(&filiform), None).unwrap())
    });
    let h5 = structure("h5-plus-r", "type-two");
    c.bench_function("semi-abelian search, h5 + r type two", |b| b.iter(|| search_semi_abelian(black_box(&h5), None).unwrap()));
    let alg = parse_salamon("0,0,0,0,12,14+25").unwrap();
    let omega = nilgcs::expr::parse_form("E1^E3 + E2^E6 + E4^E5", 6).unwrap();
    c.bench_function("symplectic decomposition, 6-dim", |b| b.iter(|| symplectic_semi_abelian(&alg, black_box(&omega)).unwrap()));
}

criterion_group!(benches, algebra, dga, searches);
criterion_main!(benches);
