//! Structural SVG 1.1 checks: namespace, version, viewBox, element names
//! from the SVG 1.1 element set, numeric geometry attributes, and no
//! external references.

const SVG_NS: &str = "http://www.w3.org/2000/svg";

// The static-content subset of the SVG 1.1 element set.
const ELEMENTS: &[&str] = &[
    "svg", "g", "defs", "desc", "title", "metadata", "symbol", "use", "rect", "circle", "ellipse", "line",
    "polyline", "polygon", "path", "text", "tspan", "linearGradient", "radialGradient", "stop", "clipPath",
    "marker", "pattern", "mask", "style",
];

const NUMERIC: &[&str] = &["x", "y", "x1", "y1", "x2", "y2", "width", "height", "stroke-width", "font-size", "cx", "cy", "r"];

pub fn validate(svg: &str) -> Result<(), String> {
    let doc = roxmltree::Document::parse(svg).map_err(|e| format!("SVG is not well-formed XML: {e}"))?;
    let root = doc.root_element();
    if root.tag_name().name() != "svg" || root.tag_name().namespace() != Some(SVG_NS) {
        return Err("root element is not an SVG svg element".into());
    }
    if root.attribute("version") != Some("1.1") {
        return Err("root element lacks version=\"1.1\"".into());
    }
    let view_box: Vec<f64> = root
        .attribute("viewBox")
        .ok_or("missing viewBox")?
        .split_whitespace()
        .map(|t| t.parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| "viewBox is not numeric")?;
    if view_box.len() != 4 || view_box[2] <= 0.0 || view_box[3] <= 0.0 {
        return Err("viewBox needs four numbers with positive size".into());
    }
    for node in root.descendants().filter(|n| n.is_element()) {
        let name = node.tag_name().name();
        if node.tag_name().namespace() != Some(SVG_NS) || !ELEMENTS.contains(&name) {
            return Err(format!("element <{name}> is not in the SVG 1.1 set"));
        }
        for attr in node.attributes() {
            if attr.name().contains("href") || attr.value().contains("url(") {
                return Err(format!("<{name}> has an external reference"));
            }
            if NUMERIC.contains(&attr.name()) && attr.value().parse::<f64>().is_err() {
                return Err(format!("<{name}> attribute {} is not a number", attr.name()));
            }
        }
    }
    Ok(())
}
