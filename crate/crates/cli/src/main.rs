use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use blockstego_cli::{bench, cmd_analyze, cmd_capacity, cmd_embed, cmd_extract, ReportFormat};
use clap::{Parser, Subcommand};

/// Hide data in binary (black and white) PBM images.
#[derive(Parser)]
#[command(name = "blockstego", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the block census and bit capacity of an image.
    Capacity { image: PathBuf },
    /// Hide a file inside a host image.
    Embed {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        payload: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover a hidden file from a stego image.
    Extract {
        #[arg(long)]
        stego: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare a host image with its stego image.
    Analyze {
        #[arg(long)]
        original: PathBuf,
        #[arg(long)]
        stego: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Capacity, PSNR and timing for every image in a directory. Writes CSV to
    /// stdout and an aligned table to stderr.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value_t = 0x5EED)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    let result = match cli.command {
        Command::Capacity { image } => cmd_capacity(&image, &mut stdout),
        Command::Embed { host, payload, out } => cmd_embed(&host, &payload, &out, &mut stdout),
        Command::Extract { stego, out } => cmd_extract(&stego, &out),
        Command::Analyze {
            original,
            stego,
            format,
        } => cmd_analyze(&original, &stego, format, &mut stdout),
        Command::Bench { corpus, reps, seed } => {
            bench::cmd_bench(&corpus, reps, seed, &mut stdout, &mut io::stderr())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
