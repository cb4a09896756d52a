//! Harmonic conjugates on the real line for the built-in functions, and
//! convergence on graded grids for `exp(-|x|)`.

use aaals::aaa::AaaOptions;
use aaals::transforms::{hilbert_builtin, HilbertFunction, HilbertOptions};

fn main() -> aaals::Result<()> {
    for f in HilbertFunction::ALL {
        let h = hilbert_builtin(f, &HilbertOptions::default())?;
        let (reference, _) = f.reference_at_two();
        println!("{:<8} v(2) = {:>19.15}  diff {:>9.1e}  {} poles", f.id(), h.eval_v(2.0), h.eval_v(2.0) - reference, h.poles.len());
    }
    let opts = HilbertOptions {
        aaa: AaaOptions {
            tol: 1e-10,
            ..Default::default()
        },
    };
    for r in aaals::cli::hilbert_grade_study(&[1, 2, 3, 4, 5, 6], &opts)? {
        println!("grade {}: {:>4} points, error {:.1e}", r.grade, r.points, r.max_error);
    }
    Ok(())
}
