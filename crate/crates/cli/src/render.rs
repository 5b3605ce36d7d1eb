//! SVG arc diagrams: the spine is a horizontal line, every edge a semicircle
//! above it, colored by page. Edges in a violating pair are dashed.

use std::collections::HashSet;
use std::fmt::Write as _;

use bookem::embedding::verify_with_cap;
use bookem::{Edge, LinearEmbedding};

/// Page colors, cycled when there are more pages.
pub const DEFAULT_PALETTE: [&str; 10] =
    ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"];

const MARGIN: f64 = 24.0;
const SPACING: f64 = 40.0;
const LABEL_GAP: f64 = 18.0;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    /// Picks the vertex spacing. `None` uses a fixed spacing.
    pub width: Option<u32>,
    /// Lower bound on the height; the drawing always grows to fit the
    /// tallest arc.
    pub height: Option<u32>,
    pub palette: Vec<String>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { width: None, height: None, palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect() }
    }
}

impl RenderSpec {
    pub fn color(&self, page: usize) -> &str {
        &self.palette[page % self.palette.len()]
    }
}

pub fn render_svg(emb: &LinearEmbedding, spec: &RenderSpec) -> String {
    let n = emb.graph().n();
    let spine = emb.spine();
    let gaps = n.saturating_sub(1).max(1) as f64;
    let spacing = match spec.width {
        Some(w) => ((w as f64 - 2.0 * MARGIN) / gaps).max(1.0),
        None => SPACING,
    };
    let width = spec.width.map_or(2.0 * MARGIN + spacing * gaps, |w| w as f64);
    let max_span =
        emb.graph().edges().iter().map(|e| spine.position(e.u).abs_diff(spine.position(e.v))).max().unwrap_or(0);
    let needed = MARGIN + spacing * max_span as f64 / 2.0 + LABEL_GAP + MARGIN;
    let height = spec.height.map_or(needed, |h| (h as f64).max(needed));
    let baseline = height - MARGIN - LABEL_GAP;
    let x = |v: usize| MARGIN + spacing * spine.position(v) as f64;

    let dashed: HashSet<Edge> = verify_with_cap(emb, None).violations.iter().flat_map(|v| [v.edge1, v.edge2]).collect();

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    )
    .unwrap();
    writeln!(s, "<title>{n} vertices, {} edges, {} pages</title>", emb.graph().m(), emb.page_count()).unwrap();
    writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    if n > 0 {
        writeln!(
            s,
            r##"<line x1="{:.2}" y1="{baseline:.2}" x2="{:.2}" y2="{baseline:.2}" stroke="#000000" stroke-width="1"/>"##,
            MARGIN,
            MARGIN + spacing * (n - 1) as f64
        )
        .unwrap();
    }

    writeln!(s, r#"<g fill="none" stroke-width="1.5">"#).unwrap();
    // Page by page, edges in graph order: fixed inputs give fixed bytes.
    for (page, edges) in emb.page_edges().iter().enumerate() {
        for e in edges {
            let (a, b) = {
                let (xa, xb) = (x(e.u), x(e.v));
                if xa <= xb {
                    (xa, xb)
                } else {
                    (xb, xa)
                }
            };
            let r = (b - a) / 2.0;
            let dash = if dashed.contains(e) { r#" stroke-dasharray="4 3""# } else { "" };
            writeln!(
                s,
                r#"<path d="M {a:.2} {baseline:.2} A {r:.2} {r:.2} 0 0 1 {b:.2} {baseline:.2}" stroke="{}"{dash} data-page="{page}" data-edge="{}-{}"/>"#,
                spec.color(page),
                e.u,
                e.v
            )
            .unwrap();
        }
    }
    writeln!(s, "</g>").unwrap();

    writeln!(s, r##"<g fill="#000000" font-family="sans-serif" font-size="11" text-anchor="middle">"##).unwrap();
    for &v in spine.order() {
        let cx = x(v);
        writeln!(s, r#"<circle cx="{cx:.2}" cy="{baseline:.2}" r="3"/>"#).unwrap();
        writeln!(s, r#"<text x="{cx:.2}" y="{:.2}">{v}</text>"#, baseline + LABEL_GAP).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use bookem::graph::{gen_path, Graph};
    use bookem::SpineOrder;

    fn strokes(svg: &str) -> HashSet<String> {
        svg.split("stroke=\"")
            .skip(1)
            .filter_map(|t| t.split('"').next())
            .filter(|c| *c != "#000000")
            .map(String::from)
            .collect()
    }

    #[test]
    fn path_on_one_page() {
        let g = gen_path(3);
        let emb = LinearEmbedding::from_pages(g.clone(), SpineOrder::identity(3), &[g.edges().to_vec()]).unwrap();
        let svg = render_svg(&emb, &RenderSpec::default());
        assert_eq!(svg.matches("<path").count(), 2);
        assert_eq!(strokes(&svg).len(), 1);
        assert!(!svg.contains("dasharray"));
        assert_eq!(svg, render_svg(&emb, &RenderSpec::default()));
    }

    #[test]
    fn edgeless_graph_draws_only_dots() {
        let emb = LinearEmbedding::from_pages(Graph::empty(4), SpineOrder::identity(4), &[]).unwrap();
        let svg = render_svg(&emb, &RenderSpec::default());
        assert_eq!(svg.matches("<path").count(), 0);
        assert_eq!(svg.matches("<circle").count(), 4);
    }

    #[test]
    fn crossing_pair_is_dashed_and_arcs_stay_above() {
        let g = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        let emb = LinearEmbedding::from_pages(g.clone(), SpineOrder::identity(4), &[g.edges().to_vec()]).unwrap();
        let svg = render_svg(&emb, &RenderSpec::default());
        assert_eq!(svg.matches("dasharray").count(), 2);
        // Sweep flag 1 from the left endpoint bends the arc upward.
        assert!(svg.matches(" 0 0 1 ").count() == 2);
    }
}
