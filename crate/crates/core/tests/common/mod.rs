#![allow(dead_code)]

use std::path::PathBuf;

use fracvoigt::expr::{BinOp, Expr, Func};
use proptest::prelude::*;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

fn rows(name: &str) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(data(name)).expect("oracle file");
    r.records().map(|x| x.expect("oracle row")).collect()
}

/// `(alpha, beta, z, E_{alpha,beta}(z))` from the extended-precision table.
pub fn ml_oracle() -> Vec<(f64, f64, f64, f64)> {
    rows("ml_oracle.csv")
        .iter()
        .map(|r| {
            let f = |i: usize| r[i].parse::<f64>().unwrap();
            (f(0), f(1), f(2), f(3))
        })
        .collect()
}

pub struct KernelRow {
    pub t: f64,
    pub creep: f64,
    pub strain2: f64,
}

/// Exact creep function and `σ(s) = s²` strain for η = 1, E = 2 at
/// `t = i/512`, `i = 0..=512`.
pub fn kernel_oracle(alpha: f64) -> Vec<KernelRow> {
    rows("kernel_oracle.csv")
        .iter()
        .filter(|r| r[0].parse::<f64>().unwrap() == alpha)
        .map(|r| KernelRow {
            t: r[1].parse().unwrap(),
            creep: r[2].parse().unwrap(),
            strain2: r[3].parse().unwrap(),
        })
        .collect()
}

/// Named scalar reference values.
pub fn example(name: &str) -> f64 {
    rows("examples.csv")
        .iter()
        .find(|r| &r[0] == name)
        .unwrap_or_else(|| panic!("no example {name}"))[1]
        .parse()
        .unwrap()
}

/// Sup-norm error of `values` (on a grid of `n` intervals over [0, 1])
/// against a reference sampled at `i/512`.
pub fn sup_error_vs_512(values: &[f64], reference: &[f64]) -> f64 {
    let n = values.len() - 1;
    let stride = 512 / n;
    values
        .iter()
        .enumerate()
        .map(|(i, v)| (v - reference[i * stride]).abs())
        .fold(0.0, f64::max)
}

/// Classical RK4 for `y' = f(y)`, `y(0) = 0`, on [0, t_end] with `steps_per`
/// steps between consecutive points of an `n`-interval grid.
pub fn rk4_on_grid(f: impl Fn(f64) -> f64, t_end: f64, n: usize, steps_per: usize) -> Vec<f64> {
    let h = t_end / (n * steps_per) as f64;
    let mut y = 0.0;
    let mut out = vec![0.0];
    for _ in 0..n {
        for _ in 0..steps_per {
            let k1 = f(y);
            let k2 = f(y + 0.5 * h * k1);
            let k3 = f(y + 0.5 * h * k2);
            let k4 = f(y + h * k3);
            y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        out.push(y);
    }
    out
}

/// `(1/η) ∫₀ᵗ e^{-(t-s)/τ} ds` for unit stress.
pub fn classical_step(eta: f64, tau: f64, t: f64) -> f64 {
    tau / eta * -(-t / tau).exp_m1()
}

/// `(1/η) ∫₀ᵗ e^{-(t-s)/τ} s ds`.
pub fn classical_ramp(eta: f64, tau: f64, t: f64) -> f64 {
    (tau * t + tau * tau * (-t / tau).exp_m1()) / eta
}

/// Random syntax trees over every construct of the expression language.
pub fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-50.0..50.0f64).prop_map(Expr::Num),
        (0u32..6).prop_map(|k| Expr::Num(k as f64)),
        Just(Expr::Var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let op = prop_oneof![
            Just(BinOp::Add),
            Just(BinOp::Sub),
            Just(BinOp::Mul),
            Just(BinOp::Div),
            Just(BinOp::Pow),
        ];
        let func = prop_oneof![
            Just(Func::Exp),
            Just(Func::Log),
            Just(Func::Sqrt),
            Just(Func::Sin),
            Just(Func::Cos),
            Just(Func::Abs),
        ];
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (op, inner.clone(), inner.clone()).prop_map(|(op, l, r)| Expr::Bin(
                op,
                Box::new(l),
                Box::new(r)
            )),
            (func, inner.clone()).prop_map(|(f, e)| Expr::Call(f, vec![e])),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Call(Func::Pow, vec![a, b])),
        ]
    })
}

/// `(source, x, value)` triples pinning precedence and associativity.
pub const PRECEDENCE_FIXTURES: &[(&str, f64, f64)] = &[
    ("1+2*3", 0.0, 7.0),
    ("-2^2", 0.0, -4.0),
    ("(1+2)*3", 0.0, 9.0),
    ("2^3^2", 0.0, 512.0),
    ("(2^3)^2", 0.0, 64.0),
    ("8/4/2", 0.0, 1.0),
    ("8-4-2", 0.0, 2.0),
    ("2*3^2", 0.0, 18.0),
    ("-2^-2", 0.0, -0.25),
    ("2^-1", 0.0, 0.5),
    ("2^-2^2", 0.0, 0.0625),
    ("--3", 0.0, 3.0),
    ("1-2+3", 0.0, 2.0),
    ("2*-3", 0.0, -6.0),
    ("-2*-2", 0.0, 4.0),
    ("-t^2", 3.0, -9.0),
    ("(-t)^2", 3.0, 9.0),
    ("2^t^2", 2.0, 16.0),
    ("pow(2, 3)^2", 0.0, 64.0),
    ("sqrt(16)/2", 0.0, 2.0),
    ("abs(-5)*2", 0.0, 10.0),
    ("1 + 2 * 3 - 4 / 2", 0.0, 5.0),
    ("exp(0)+log(1)", 0.0, 1.0),
    ("-(1+2)*3", 0.0, -9.0),
    ("6/2*3", 0.0, 9.0),
    ("2^2*3", 0.0, 12.0),
    ("1e2/4", 0.0, 25.0),
    ("-t", 2.0, -2.0),
    ("t*t-t/t", 4.0, 15.0),
];
