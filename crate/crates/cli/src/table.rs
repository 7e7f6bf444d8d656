//! Plain-text tables of Mackey functors.

use std::fmt::Write;

use mackey_witt::fgab::Matrix;
use mackey_witt::mackey::MackeyFunctor;

pub fn matrix(m: &Matrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("0 ({}x{})", m.rows(), m.cols());
    }
    let rows: Vec<String> = m.row_iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

/// Levels by divisor, then the prime-step restrictions, transfers and Weyl actions,
/// all on the simplified presentation.
pub fn mackey(title: &str, m: &MackeyFunctor) -> String {
    let f = m.simplify().functor;
    let mut out = String::new();
    writeln!(out, "{title}").unwrap();
    for d in f.divisors() {
        writeln!(out, "  C_{:<4} {}", d, f.level(d).canonical_form()).unwrap();
    }
    for (d, e) in f.ctx().prime_edges() {
        writeln!(out, "  res {e}->{d}: {}", matrix(f.res_edge(d, e).matrix())).unwrap();
        writeln!(out, "  tr  {d}->{e}: {}", matrix(f.tr_edge(d, e).matrix())).unwrap();
    }
    for d in f.divisors() {
        if f.n() / d > 1 {
            writeln!(out, "  weyl {d}: {}", matrix(f.weyl(d).matrix())).unwrap();
        }
    }
    out
}
