//! Minimal polyline plot of a peak-normalized profile.

use std::fmt::Write as _;

use ghostsim::biphoton::Plane;
use ghostsim::detection::CcrProfile;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;
const Y_TOP: f64 = 1.05;

pub fn profile_svg(p: &CcrProfile, title: &str) -> String {
    let g = p.grid();
    let (x0, x1) = (g.x_min(), g.x_max());
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - y / Y_TOP * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    // Axes.
    let _ = writeln!(
        out,
        r#"<path d="M{l} {t} L{l} {b} L{r} {b}" fill="none" stroke="black"/>"#,
        l = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    for i in 0..=4 {
        let x = x0 + (x1 - x0) * i as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{:.3}</text>"#,
            px(x),
            HEIGHT - MARGIN + 18.0,
            x * 1e3
        );
        let y = i as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{y:.2}</text>"#,
            MARGIN - 6.0,
            py(y) + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">x (mm)</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0
    );

    // Slit image (and any signal slit) only live in the ghost plane.
    if p.plane == Plane::Ghost {
        let s = &p.scenario;
        let mut slits = vec![s.image_half_width()];
        slits.extend(s.signal_slit.map(|b| 0.5 * b));
        for h in slits {
            let (a, b) = (px((-h).max(x0)), px(h.min(x1)));
            let _ = writeln!(
                out,
                r#"<rect x="{a:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="gray" stroke-dasharray="6 4"/>"#,
                py(1.0),
                b - a,
                py(0.0) - py(1.0)
            );
        }
    }

    let points: Vec<String> = g
        .points()
        .iter()
        .zip(p.intensity())
        .map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
        points.join(" ")
    );
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
