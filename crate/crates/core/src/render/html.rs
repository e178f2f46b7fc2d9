use super::svg::escape;

/// Wraps an SVG document in a self-contained HTML5 page.
///
/// The SVG is copied verbatim into the body; the page references no
/// external resources. An empty `title` falls back to `metric_name`.
pub fn render_html(svg: &str, title: &str, metric_name: &str) -> String {
    let title = if title.trim().is_empty() {
        metric_name
    } else {
        title
    };
    let mut out = String::with_capacity(svg.len() + 256);
    out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n");
    out.push_str("<title>");
    out.push_str(&escape(title));
    out.push_str("</title>\n</head>\n<body>\n");
    out.push_str(svg);
    if !svg.ends_with('\n') {
        out.push('\n');
    }
    out.push_str("</body>\n</html>\n");
    out
}
