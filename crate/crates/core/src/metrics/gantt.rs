use std::fmt::Write as _;

use crate::scheduler::Schedule;

const LEFT: f64 = 48.0;
const TOP: f64 = 16.0;
const ROW: f64 = 22.0;
const AXIS: f64 = 28.0;

/// SVG timeline with one row per touched qubit. Gates are blue blocks; red
/// rules mark barrier boundaries on the qubits that stay synchronized.
pub fn emit_gantt(s: &Schedule) -> String {
    let rows = s.touched_qubits();
    let span = s.program_cycle.max(1) as f64;
    let unit = (720.0 / span).clamp(4.0, 48.0);
    let width = LEFT + span * unit + 16.0;
    let height = TOP + rows.len() as f64 * ROW + AXIS;
    let x = |t: u64| LEFT + t as f64 * unit;
    let y = |q: usize| rows.iter().position(|&r| r == q).map(|i| TOP + i as f64 * ROW);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" font-family="monospace" font-size="11">"#
    );
    let axis_y = TOP + rows.len() as f64 * ROW + 4.0;
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{LEFT}" y1="{axis_y}" x2="{:.1}" y2="{axis_y}" stroke="black"/>"#,
        x(s.program_cycle.max(1))
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{axis_y}" stroke="black"/>"#
    );
    let step = (s.program_cycle / 16).max(1);
    let mut t = 0;
    while t <= s.program_cycle {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{t}</text>"#,
            x(t),
            axis_y + 14.0
        );
        t += step;
    }
    for (i, q) in rows.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">q{q}</text>"#,
            LEFT - 6.0,
            TOP + i as f64 * ROW + ROW * 0.65
        );
    }
    for g in s.gates() {
        for &q in &g.qubits {
            let Some(top) = y(q) else { continue };
            let _ = writeln!(
                out,
                r##"<rect class="gate" x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="#4a7bd0" stroke="#1f3f80"><title>{}_{} [{}, {})</title></rect>"##,
                x(g.start),
                top + 2.0,
                g.dur as f64 * unit,
                ROW - 4.0,
                g.kind,
                g.id,
                g.start,
                g.end()
            );
        }
    }
    for layer in &s.layers {
        for &q in &layer.identities {
            let Some(top) = y(q) else { continue };
            let _ = writeln!(
                out,
                r##"<rect class="identity" x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="#bbbbbb"/>"##,
                x(layer.start),
                top + 6.0,
                unit,
                ROW - 12.0
            );
        }
    }
    for b in &s.boundaries {
        for &q in &b.retained {
            let Some(top) = y(q) else { continue };
            let _ = writeln!(
                out,
                r##"<line class="barrier" x1="{0:.1}" y1="{1:.1}" x2="{0:.1}" y2="{2:.1}" stroke="#d02020" stroke-width="2"/>"##,
                x(b.time),
                top,
                top + ROW
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
