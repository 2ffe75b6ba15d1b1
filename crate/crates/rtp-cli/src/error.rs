use rtp_core::cycle::CycleError;
use rtp_core::lfd::LfdError;
use rtp_core::poly::PolyError;
use rtp_core::quiver::QuiverError;
use rtp_core::roots::RootError;
use rtp_core::tree::TreeError;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{module}: {message}")]
    Domain { module: &'static str, message: String },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Domain { .. } => ExitCode::from(1),
        }
    }
}

macro_rules! domain {
    ($($err:ty => $module:literal),*) => {$(
        impl From<$err> for CliError {
            fn from(e: $err) -> Self {
                CliError::Domain { module: $module, message: e.to_string() }
            }
        }
    )*};
}

domain!(
    TreeError => "tree",
    CycleError => "cycle",
    RootError => "roots",
    QuiverError => "quiver",
    LfdError => "lfd",
    PolyError => "poly"
);
