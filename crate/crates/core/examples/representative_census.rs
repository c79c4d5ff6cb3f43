//! Representative tables for feedback vertex set at small boundary sizes.
//!
//!     cargo run --release --example representative_census -- 2

use fmdel::family::Family;
use fmdel::representatives::{rep_census, Caps};

fn main() -> fmdel::Result<()> {
    let t_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let family = Family::feedback_vertex_set();
    let ts: Vec<usize> = (0..=t_max).collect();
    let report = rep_census(&ts, 3, &family, |t| Caps { n_max: t + 5, m_max: t + 6 })?;
    print!("{}", report.to_csv());
    println!(
        "max representative size <= {:.2} t + {:.2} (holds on last row: {})",
        report.rep_size.slope, report.rep_size.intercept, report.rep_size.held_out_ok
    );
    for f in &report.flags {
        println!("note: {f}");
    }
    Ok(())
}
