use std::borrow::Cow;
use std::path::{Component, Path, PathBuf};

/// Where the UI bundle comes from.
#[derive(Debug, Clone)]
pub enum Assets {
    /// The small bundle compiled into the binary.
    Embedded,
    /// A built bundle on disk. Only regular files are served; `/` maps to
    /// `index.html`; there is no directory listing.
    Dir(PathBuf),
}

const EMBEDDED: &[(&str, &[u8])] = &[
    ("index.html", include_bytes!("../assets/index.html")),
    ("app.js", include_bytes!("../assets/app.js")),
    ("style.css", include_bytes!("../assets/style.css")),
];

impl Assets {
    /// Content type and body for a request path, or `None` for 404.
    pub async fn get(&self, path: &str) -> Option<(&'static str, Cow<'static, [u8]>)> {
        let relative = sanitize(path)?;
        match self {
            Assets::Embedded => EMBEDDED
                .iter()
                .find(|(name, _)| *name == relative)
                .map(|(name, bytes)| (media_type(name), Cow::Borrowed(*bytes))),
            Assets::Dir(root) => {
                let full = root.join(&relative);
                let meta = tokio::fs::metadata(&full).await.ok()?;
                if !meta.is_file() {
                    return None;
                }
                let bytes = tokio::fs::read(&full).await.ok()?;
                Some((media_type(&relative), Cow::Owned(bytes)))
            }
        }
    }
}

/// Maps a URL path onto a relative file path, refusing anything that could
/// leave the asset root.
fn sanitize(path: &str) -> Option<String> {
    let trimmed = path.trim_start_matches('/');
    let relative = if trimmed.is_empty() {
        "index.html"
    } else {
        trimmed
    };
    if relative.ends_with('/') || relative.contains('\\') || relative.contains('\0') {
        return None;
    }
    let ok = Path::new(relative)
        .components()
        .all(|c| matches!(c, Component::Normal(s) if !s.to_string_lossy().starts_with('.')));
    ok.then(|| relative.to_owned())
}

fn media_type(name: &str) -> &'static str {
    let ext = name.rsplit_once('.').map_or("", |(_, e)| e);
    match ext {
        "html" => "text/html; charset=utf-8",
        "js" | "mjs" => "text/javascript; charset=utf-8",
        "css" => "text/css; charset=utf-8",
        "json" | "map" => "application/json",
        "svg" => "image/svg+xml",
        "png" => "image/png",
        "ico" => "image/x-icon",
        "woff2" => "font/woff2",
        "txt" => "text/plain; charset=utf-8",
        _ => "application/octet-stream",
    }
}
