//! Text, CSV and SVG renderings.

use std::fmt::Write;

use shellbound::{ArcRole, BatchSummary, PinchSpec, ProfileSample};

/// Nine significant digits, trailing zeros dropped.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-4..9).contains(&exponent) {
        let s = format!("{x:.8e}");
        let (mantissa, exp) = s.split_once('e').expect("exponent form");
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (8 - exponent).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_owned()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn role_name(role: ArcRole) -> &'static str {
    match role {
        ArcRole::Main => "main",
        ArcRole::Cap => "cap",
    }
}

/// `index,segment,role,x,y,z,rho,phi,curvature`; `(x, y, z)` are model
/// coordinates, `(rho, phi)` geodesic polar coordinates about the symmetry
/// centre.
pub fn spindle_csv(samples: &[ProfileSample]) -> String {
    let mut out = String::from("index,segment,role,x,y,z,rho,phi,curvature\n");
    for (i, s) in samples.iter().enumerate() {
        writeln!(
            out,
            "{i},{},{},{},{},{},{},{},{}",
            s.segment,
            role_name(s.role),
            s.point.x,
            s.point.y,
            s.point.z,
            s.rho,
            s.phi,
            s.curvature
        )
        .expect("writing to a String");
    }
    out
}

/// Half-extent of the SVG viewBox in units of `R1`.
const VIEW: f64 = 1.25;

/// Meridian in geodesic polar coordinates about the symmetry centre,
/// scaled so that `R1` is one unit; the centre is the origin.
pub fn spindle_svg(
    pinch: &PinchSpec,
    r_tilde: f64,
    r_outer: f64,
    samples: &[ProfileSample],
) -> String {
    let scale = 1.0 / pinch.r1();
    let xy = |s: &ProfileSample| (s.rho * scale * s.phi.cos(), -s.rho * scale * s.phi.sin());
    let mut out = String::new();
    let w = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    w(
        &mut out,
        format!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.3} {:.3} {:.3} {:.3}" width="600" height="600">"#,
            -VIEW,
            -VIEW,
            2.0 * VIEW,
            2.0 * VIEW
        ),
    );
    w(
        &mut out,
        format!(
            "<title>spindle {} kappa1={} kappa2={} r~={} R~={}</title>",
            pinch.curvature().label(),
            sig9(pinch.kappa1()),
            sig9(pinch.kappa2()),
            sig9(r_tilde),
            sig9(r_outer)
        ),
    );
    w(
        &mut out,
        format!(
            r##"<line x1="{:.3}" y1="0" x2="{:.3}" y2="0" stroke="#999" stroke-width="0.004"/>"##,
            -VIEW, VIEW
        ),
    );
    for (radius, color) in [(r_tilde, "#2ca02c"), (r_outer, "#9467bd")] {
        w(
            &mut out,
            format!(
                r#"<circle cx="0" cy="0" r="{:.6}" fill="none" stroke="{color}" stroke-width="0.004" stroke-dasharray="0.02 0.02"/>"#,
                radius * scale
            ),
        );
    }

    // One polyline per run of samples on the same arc, joined to the next run.
    let n = samples.len();
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && samples[end + 1].segment == samples[start].segment {
            end += 1;
        }
        let mut points = String::new();
        for s in samples[start..=end]
            .iter()
            .chain(std::iter::once(&samples[(end + 1) % n]))
        {
            let (x, y) = xy(s);
            write!(points, "{x:.6},{y:.6} ").expect("writing to a String");
        }
        let color = match samples[start].role {
            ArcRole::Main => "#1f77b4",
            ArcRole::Cap => "#d62728",
        };
        w(
            &mut out,
            format!(
                r#"<polyline class="{}" points="{}" fill="none" stroke="{color}" stroke-width="0.008"/>"#,
                role_name(samples[start].role),
                points.trim_end()
            ),
        );
        start = end + 1;
    }
    w(
        &mut out,
        r#"<circle cx="0" cy="0" r="0.01" fill="black"/>"#.to_owned(),
    );
    out.push_str("</svg>\n");
    out
}

/// Header plus one row; an absent quotient margin is an empty field.
pub fn summary_csv(s: &BatchSummary) -> String {
    let quotient = s
        .worst_quotient_margin
        .map(|q| q.to_string())
        .unwrap_or_default();
    format!(
        "geometry,c,kappa1,kappa2,family,bodies,violations,worst_width_margin,worst_outer_radius_margin,worst_quotient_margin,max_width,max_quotient\n\
         {},{},{},{},{},{},{},{},{},{},{},{}\n",
        s.geometry,
        s.c,
        s.kappa1,
        s.kappa2,
        s.family.label(),
        s.bodies,
        s.violations,
        s.worst_width_margin,
        s.worst_outer_radius_margin,
        quotient,
        s.max_width,
        s.max_quotient
    )
}
