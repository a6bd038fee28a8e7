fn main() {
    if let Some(threads) = std::env::var("UNIONFAM_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if threads > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    std::process::exit(unionfam_cli::run(std::env::args_os()));
}
