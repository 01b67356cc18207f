//! Static interval diagrams on a fixed 1000x1000 canvas.
//!
//! The top panel shows the graphs of `T_i` over their digit intervals with
//! `I` scaled to the unit square; the rows below mark the digit, choice,
//! switch and fixed-digit intervals. Solid strokes are maps and intervals,
//! dotted strokes are the diagonal and the switch-region ends.

use std::fmt::Write;

use beta_forge::geometry::{build_catalog, ExpansionParams, Interval};

use crate::error::{domain, CliError};

const SIZE: f64 = 1000.0;
const PLOT_LEFT: f64 = 150.0;
const PLOT_TOP: f64 = 60.0;
const PLOT_SIZE: f64 = 600.0;
const ROWS_TOP: f64 = 700.0;
const ROWS_BOTTOM: f64 = 980.0;

const DIGIT_COLOR: &str = "#4c72b0";
const CHOICE_COLOR: &str = "#dd8452";
const SWITCH_COLOR: &str = "#55a868";
const FIXED_COLOR: &str = "#c44e52";

fn f(v: f64) -> String {
    format!("{v:.2}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn diagram(params: &ExpansionParams, beta_label: &str) -> Result<String, CliError> {
    let catalog = build_catalog(params).map_err(domain)?;
    let m = params.m();
    let beta = params.beta_f64();
    let right = params.right_end().to_f64();
    let px = |x: f64| PLOT_LEFT + PLOT_SIZE * (x / right);
    let py = |y: f64| PLOT_TOP + PLOT_SIZE * (1.0 - y / right);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
        SIZE as u32
    );
    let title = format!("Interval geometry for m = {m}, beta = {}", escape(beta_label));
    let _ = writeln!(s, "<title>{title}</title>");
    let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"#ffffff\"/>", SIZE as u32);
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"35\" font-family=\"monospace\" font-size=\"18\" fill=\"#000000\">m = {m}, beta = {} ({beta:.6})</text>",
        f(PLOT_LEFT),
        escape(beta_label)
    );

    // Graphs of the maps.
    s.push_str("<g id=\"maps\">\n");
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>",
        f(PLOT_LEFT),
        f(PLOT_TOP),
        f(PLOT_SIZE),
        f(PLOT_SIZE)
    );
    let _ = writeln!(
        s,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 4\"/>",
        f(px(0.0)),
        f(py(0.0)),
        f(px(right)),
        f(py(right))
    );
    let (sw_lo, sw_hi) = catalog.switch_region.to_f64();
    for x in [sw_lo, sw_hi] {
        let _ = writeln!(
            s,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"{3}\" stroke-width=\"1\" stroke-dasharray=\"2 3\"/>",
            f(px(x)),
            f(PLOT_TOP),
            f(ROWS_BOTTOM),
            SWITCH_COLOR
        );
    }
    for (i, d) in catalog.digit.iter().enumerate() {
        let (lo, hi) = d.to_f64();
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{DIGIT_COLOR}\" stroke-width=\"2\"><title>T_{i}</title></line>",
            f(px(lo)),
            f(py(beta * lo - i as f64)),
            f(px(hi)),
            f(py(beta * hi - i as f64))
        );
    }
    s.push_str("</g>\n");

    // Interval rows.
    let mut rows: Vec<(String, &Interval, &str)> = vec![("I".into(), &catalog.whole, "#333333")];
    rows.extend(catalog.digit.iter().enumerate().map(|(i, d)| (format!("digit {i}"), d, DIGIT_COLOR)));
    rows.extend(catalog.choice.iter().enumerate().map(|(i, c)| (format!("choice {}", i + 1), c, CHOICE_COLOR)));
    rows.push(("switch".into(), &catalog.switch_region, SWITCH_COLOR));
    rows.extend(
        catalog
            .fixed_digit
            .iter()
            .enumerate()
            .filter_map(|(i, fd)| fd.as_ref().map(|fd| (format!("fixed {i}"), fd, FIXED_COLOR))),
    );
    let pitch = ((ROWS_BOTTOM - ROWS_TOP) / rows.len() as f64).min(24.0);
    let bar = (pitch * 0.6).max(1.0);
    let font = (pitch * 0.7).clamp(4.0, 14.0);
    s.push_str("<g id=\"intervals\">\n");
    for (r, (label, iv, color)) in rows.iter().enumerate() {
        let y = ROWS_TOP + pitch * r as f64;
        let (lo, hi) = iv.to_f64();
        let _ = writeln!(
            s,
            "<text x=\"20\" y=\"{}\" font-family=\"monospace\" font-size=\"{}\" fill=\"#000000\">{label}</text>",
            f(y + bar),
            f(font)
        );
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{color}\" stroke=\"{color}\" stroke-width=\"0.5\"/>",
            f(px(lo)),
            f(y),
            f((px(hi) - px(lo)).max(0.5)),
            f(bar)
        );
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}
