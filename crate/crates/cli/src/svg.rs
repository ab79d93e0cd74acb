//! Static SVG 1.1 plots. Output depends only on the inputs: coordinates are
//! printed with a fixed number of decimals and nothing time- or
//! platform-dependent is embedded.

use std::fmt::Write as _;
use std::path::Path;

use optrig::pythagorean::PythTriple;
use optrig::trig::closed::{mu1_from_extremes, nu1_from_extremes};

use crate::CliError;

const HEADER: &str = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

/// Unit circle with each triple's point `(a/c, b/c)` marked and labeled.
pub fn render_circle(triples: &[PythTriple]) -> Result<String, CliError> {
    if triples.is_empty() {
        return Err(CliError::input("no triples to plot"));
    }
    let (size, center, radius) = (480.0, 240.0, 200.0);
    let mut s = String::from(HEADER);
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(s, "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<line x1=\"20\" y1=\"{center}\" x2=\"460\" y2=\"{center}\" stroke=\"#999\" stroke-width=\"1\"/>"
    );
    let _ = writeln!(
        s,
        "<line x1=\"{center}\" y1=\"20\" x2=\"{center}\" y2=\"460\" stroke=\"#999\" stroke-width=\"1\"/>"
    );
    let _ = writeln!(
        s,
        "<circle cx=\"{center}\" cy=\"{center}\" r=\"{radius}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>"
    );
    let _ = writeln!(s, "<g font-family=\"monospace\" font-size=\"9\">");
    for t in triples {
        let (x, y) = (t.a as f64 / t.c as f64, t.b as f64 / t.c as f64);
        let (px, py) = (center + radius * x, center - radius * y);
        let _ = writeln!(
            s,
            "<circle cx=\"{px:.3}\" cy=\"{py:.3}\" r=\"3\" fill=\"#c0392b\"/><text x=\"{:.3}\" y=\"{:.3}\">({}, {}, {})</text>",
            px + 5.0,
            py - 4.0,
            t.a,
            t.b,
            t.c
        );
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

/// Samples `φ(diag(1, κ))` in degrees on `steps` geometrically spaced
/// condition numbers from `lambda_min` to `lambda_max`.
pub fn angle_curve(lambda_min: f64, lambda_max: f64, steps: usize) -> Result<Vec<(f64, f64)>, CliError> {
    if !(lambda_min >= 1.0 && lambda_max > lambda_min && lambda_max.is_finite()) {
        return Err(CliError::input(format!(
            "bad range: need 1 <= lmin < lmax, got {lambda_min}, {lambda_max}"
        )));
    }
    if steps < 2 {
        return Err(CliError::input(format!("bad range: need steps >= 2, got {steps}")));
    }
    let (l0, l1) = (lambda_min.ln(), lambda_max.ln());
    Ok((0..steps)
        .map(|i| {
            let kappa = match i {
                0 => lambda_min,
                i if i == steps - 1 => lambda_max,
                _ => (l0 + (l1 - l0) * i as f64 / (steps - 1) as f64).exp(),
            };
            let phi = nu1_from_extremes(1.0, kappa).atan2(mu1_from_extremes(1.0, kappa));
            (kappa, phi.to_degrees())
        })
        .collect())
}

/// Polyline of φ (degrees, 0–90) over log₁₀ κ.
pub fn render_angle(curve: &[(f64, f64)]) -> String {
    let (w, h) = (640.0, 400.0);
    let (left, right, top, bottom) = (60.0, 20.0, 20.0, 50.0);
    let (pw, ph) = (w - left - right, h - top - bottom);
    let lo = curve.first().map_or(0.0, |p| p.0.log10());
    let hi = curve.last().map_or(1.0, |p| p.0.log10());
    let span = if hi > lo { hi - lo } else { 1.0 };
    let sx = |k: f64| left + pw * (k.log10() - lo) / span;
    let sy = |deg: f64| top + ph * (1.0 - deg / 90.0);

    let mut s = String::from(HEADER);
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(s, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<rect x=\"{left}\" y=\"{top}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" stroke=\"black\"/>"
    );
    let _ = writeln!(s, "<g font-family=\"monospace\" font-size=\"10\">");
    for deg in [0.0, 30.0, 60.0, 90.0] {
        let y = sy(deg);
        let _ = writeln!(
            s,
            "<line x1=\"{left}\" y1=\"{y:.3}\" x2=\"{:.3}\" y2=\"{y:.3}\" stroke=\"#ddd\"/><text x=\"{:.3}\" y=\"{:.3}\" text-anchor=\"end\">{deg}</text>",
            left + pw,
            left - 6.0,
            y + 3.0
        );
    }
    let mut decade = lo.ceil() as i32;
    while f64::from(decade) <= hi + 1e-12 {
        let x = sx(10f64.powi(decade));
        let _ = writeln!(
            s,
            "<text x=\"{x:.3}\" y=\"{:.3}\" text-anchor=\"middle\">1e{decade}</text>",
            top + ph + 16.0
        );
        decade += 1;
    }
    let _ = writeln!(
        s,
        "<text x=\"{:.3}\" y=\"{:.3}\" text-anchor=\"middle\">condition number (log scale)</text>",
        left + pw / 2.0,
        h - 10.0
    );
    let _ = writeln!(
        s,
        "<text x=\"14\" y=\"{:.3}\" transform=\"rotate(-90 14 {:.3})\" text-anchor=\"middle\">turning angle (deg)</text>",
        top + ph / 2.0,
        top + ph / 2.0
    );
    s.push_str("</g>\n<polyline fill=\"none\" stroke=\"#2c3e50\" stroke-width=\"1.5\" points=\"");
    for (i, &(k, deg)) in curve.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{:.3},{:.3}", sx(k), sy(deg));
    }
    s.push_str("\"/>\n</svg>\n");
    s
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}
