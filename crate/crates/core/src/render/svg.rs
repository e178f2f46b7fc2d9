use std::fmt::Write;

use super::fmt::format_number as num;
use super::{PlotSpec, RenderError};
use crate::config::AnalysisConfig;
use crate::curve::StepCurve;
use crate::engine::ProfileSet;
use crate::scalar::Scalar;

/// Renders every curve of `profiles` as an SVG 1.1 document.
///
/// The output depends only on its inputs: no timestamps, no generated ids,
/// six significant digits for every coordinate.
pub fn render_svg<T: Scalar>(
    profiles: &ProfileSet<T>,
    config: &AnalysisConfig<T>,
) -> Result<String, RenderError> {
    let spec = PlotSpec::new(profiles, config)?;
    Ok(render_with(profiles, &spec))
}

pub(crate) fn render_with<T: Scalar>(profiles: &ProfileSet<T>, spec: &PlotSpec) -> String {
    let mut out = String::with_capacity(8192);
    let (w, h) = (num(spec.width), num(spec.height));
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        "<title>Performance profile ({})</title>",
        escape(&spec.legend_title)
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    axes(&mut out, spec);
    curves(&mut out, profiles, spec);
    legend(&mut out, profiles, spec);
    out.push_str("</svg>\n");
    out
}

fn axes(out: &mut String, spec: &PlotSpec) {
    let (l, r, t, b) = (
        spec.plot_left(),
        spec.plot_right(),
        spec.plot_top(),
        spec.plot_bottom(),
    );
    out.push_str("<g class=\"grid\" stroke=\"#e0e0e0\" stroke-width=\"1\">\n");
    for k in 0..=5 {
        let y = num(spec.y(k as f64 / 5.0));
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#,
            num(l),
            num(r)
        );
    }
    out.push_str("</g>\n");

    out.push_str("<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n");
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        num(l),
        num(b),
        num(r),
        num(b)
    );
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        num(l),
        num(t),
        num(l),
        num(b)
    );
    let ticks = spec.x_ticks();
    for &tau in &ticks {
        let x = num(spec.x(tau));
        let _ = writeln!(
            out,
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
            num(b),
            num(b + 5.0)
        );
    }
    for k in 0..=5 {
        let y = num(spec.y(k as f64 / 5.0));
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#,
            num(l - 5.0),
            num(l)
        );
    }
    out.push_str("</g>\n");

    if spec.is_split() {
        let x = num(spec.regions[1].px_lo);
        let _ = writeln!(
            out,
            r##"<line class="region-divider" x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#808080" stroke-dasharray="4 3"/>"##,
            num(t),
            num(b)
        );
    }

    out.push_str("<g class=\"tick-labels\" fill=\"black\">\n");
    for &tau in &ticks {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            num(spec.x(tau)),
            num(b + 18.0),
            num(tau)
        );
    }
    for k in 0..=5 {
        let f = k as f64 / 5.0;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            num(l - 8.0),
            num(spec.y(f) + 4.0),
            num(f)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">τ</text>"#,
        num((l + r) / 2.0),
        num(spec.height - 10.0)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" transform="rotate(-90 {} {})">fraction of instances</text>"#,
        num(16.0),
        num((t + b) / 2.0),
        num(16.0),
        num((t + b) / 2.0)
    );
    out.push_str("</g>\n");
}

fn curves<T: Scalar>(out: &mut String, profiles: &ProfileSet<T>, spec: &PlotSpec) {
    out.push_str("<g class=\"curves\" fill=\"none\" stroke-width=\"2\">\n");
    for (i, (name, curve)) in profiles.curves().iter().enumerate() {
        let points = step_points(curve, spec)
            .into_iter()
            .map(|(tau, f)| format!("{},{}", num(spec.x(tau)), num(spec.y(f))))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            r#"<polyline data-solver="{}" stroke="{}" points="{points}"/>"#,
            escape(name),
            spec.color(i)
        );
    }
    out.push_str("</g>\n");
}

/// Vertices of the right-continuous step function over the visible domain,
/// in (τ, F) space.
pub(crate) fn step_points<T: Scalar>(curve: &StepCurve<T>, spec: &PlotSpec) -> Vec<(f64, f64)> {
    let (lo, hi) = spec.tau_range();
    let frac = |c: usize| f64::fraction(c, curve.denominator());
    let start = curve.count_at(T::from_f64_lossy(lo));
    let mut points = vec![(lo, frac(start))];
    let mut prev = start;
    for (&tau, &count) in curve.breakpoints().iter().zip(curve.counts()) {
        let tau = tau.to_f64_lossy();
        if tau <= lo {
            continue;
        }
        if tau > hi {
            break;
        }
        points.push((tau, frac(prev)));
        points.push((tau, frac(count)));
        prev = count;
    }
    points.push((hi, frac(prev)));
    points.dedup();
    points
}

fn legend<T: Scalar>(out: &mut String, profiles: &ProfileSet<T>, spec: &PlotSpec) {
    let x = spec.plot_right() + 16.0;
    let mut y = spec.plot_top() + 4.0;
    out.push_str("<g class=\"legend\">\n");
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-weight="bold">{}</text>"#,
        num(x),
        num(y),
        escape(&spec.legend_title)
    );
    for (i, name) in profiles.curves().keys().enumerate() {
        y += 20.0;
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"/>"#,
            num(x),
            num(y - 4.0),
            num(x + 20.0),
            num(y - 4.0),
            spec.color(i)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">{}</text>"#,
            num(x + 26.0),
            num(y),
            escape(name)
        );
    }
    out.push_str("</g>\n");
}

pub(crate) fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}
