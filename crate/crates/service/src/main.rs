use std::net::SocketAddr;
use std::path::PathBuf;

use clap::Parser;
use perfprof_service::{router, ServiceConfig, DEFAULT_BODY_LIMIT};
use tracing_subscriber::EnvFilter;

/// Serve the performance-profile API and web UI.
#[derive(Debug, Parser)]
#[command(name = "perfprof-serve", version)]
struct Args {
    /// Address to listen on.
    #[arg(long, env = "PERFPROF_BIND", default_value = "127.0.0.1:8080")]
    bind: SocketAddr,

    /// Largest accepted request body, in bytes.
    #[arg(long, env = "PERFPROF_BODY_LIMIT", default_value_t = DEFAULT_BODY_LIMIT)]
    body_limit: usize,

    /// Serve the UI from this directory instead of the built-in page.
    #[arg(long, env = "PERFPROF_ASSETS")]
    assets: Option<PathBuf>,
}

#[tokio::main]
async fn main() -> std::io::Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .with_writer(std::io::stderr)
        .init();
    let args = Args::parse();
    let app = router(ServiceConfig {
        body_limit: args.body_limit,
        assets_dir: args.assets,
    });
    let listener = tokio::net::TcpListener::bind(args.bind).await?;
    tracing::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
