//! CSV writers. Floats are printed in scientific notation with 17
//! significant digits, so every value round-trips exactly and identical
//! inputs produce byte-identical files. Lines end with LF.

use std::io::{self, Write};

use tomo_core::boson::OpticalTomogram;
use tomo_core::plane::PlaneDistribution;
use tomo_core::qubit_tomography::{QubitTomogram, Spin};

/// 17 significant digits, scientific.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// `m,alpha,beta,w` with one row per node: spins first, then the angular
/// grid in (alpha, beta) order.
pub fn write_qubit_tomogram(out: &mut impl Write, w: &QubitTomogram) -> io::Result<()> {
    writeln!(out, "m,alpha,beta,w")?;
    let grid = w.grid();
    for m in Spin::BOTH {
        for ia in 0..grid.n_alpha() {
            for ib in 0..grid.n_beta() {
                writeln!(
                    out,
                    "{},{},{},{}",
                    m.value(),
                    fmt(grid.alpha(ia)),
                    fmt(grid.beta(ib)),
                    fmt(w.value(m, ia, ib))
                )?;
            }
        }
    }
    Ok(())
}

/// `x,phi,omega`, phases outer, quadrature nodes inner.
pub fn write_optical_tomogram(out: &mut impl Write, w: &OpticalTomogram) -> io::Result<()> {
    writeln!(out, "x,phi,omega")?;
    for j in 0..w.n_phi() {
        let phi = w.phi(j);
        for (i, x) in w.xgrid().nodes().enumerate() {
            writeln!(out, "{},{},{}", fmt(x), fmt(phi), fmt(w.value(i, j)))?;
        }
    }
    Ok(())
}

/// `m,alpha,beta,m2,alpha2,beta2,K`: kernel values on every ordered pair of
/// grid nodes, output point first.
pub fn write_kernel_dump(
    out: &mut impl Write,
    kernel: &tomo_core::qubit_kernels::QubitKernel,
    grid: &tomo_core::qubit_tomography::AngularGrid,
) -> io::Result<()> {
    writeln!(out, "m,alpha,beta,m2,alpha2,beta2,K")?;
    for m in Spin::BOTH {
        for ia in 0..grid.n_alpha() {
            for ib in 0..grid.n_beta() {
                let x = grid.point(m, ia, ib);
                for m2 in Spin::BOTH {
                    for ja in 0..grid.n_alpha() {
                        for jb in 0..grid.n_beta() {
                            let y = grid.point(m2, ja, jb);
                            writeln!(
                                out,
                                "{},{},{},{},{},{},{}",
                                m.value(),
                                fmt(x.alpha),
                                fmt(x.beta),
                                m2.value(),
                                fmt(y.alpha),
                                fmt(y.beta),
                                fmt(kernel.eval(&x, &y))
                            )?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `x,y,Omega` on the polar grid mapped to Cartesian coordinates.
pub fn write_plane(out: &mut impl Write, p: &PlaneDistribution) -> io::Result<()> {
    writeln!(out, "x,y,Omega")?;
    for j in 0..p.n_phi() {
        let phi = p.phi(j);
        for i in 0..p.n_r() {
            let r = p.r(i);
            writeln!(
                out,
                "{},{},{}",
                fmt(r * phi.cos()),
                fmt(r * phi.sin()),
                fmt(p.value(i, j))
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use tomo_core::qstate::DensityMatrix;
    use tomo_core::qubit_tomography::{sample_tomogram, AngularGrid};

    #[test]
    fn float_formatting_is_17_significant_digits() {
        assert_eq!(fmt(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt(std::f64::consts::FRAC_PI_2), "1.5707963267948966e0");
    }

    #[test]
    fn qubit_csv_shape() {
        let w = sample_tomogram(&DensityMatrix::maximally_mixed(), &AngularGrid::default_grid());
        let mut buf = Vec::new();
        write_qubit_tomogram(&mut buf, &w).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "m,alpha,beta,w");
        assert_eq!(lines.len(), 1 + 2 * 8 * 4);
        assert!(lines[1].starts_with("0.5,"));
        assert!(lines[1].ends_with(",5.0000000000000000e-1"));
        assert!(!text.contains('\r'));
    }
}
