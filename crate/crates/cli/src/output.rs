use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

/// Rendered command output plus whether every check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }

    pub fn verdict(text: String, passed: bool) -> Self {
        Outcome { text, passed }
    }
}

/// A usage error: a short kind and a message.
#[derive(Debug)]
pub struct Usage(pub String, pub String);

impl From<jsbo::Error> for Usage {
    fn from(e: jsbo::Error) -> Self {
        let kind = match e {
            jsbo::Error::Parse(_) => "parse",
            jsbo::Error::Shape(_) => "shape",
            jsbo::Error::Unsupported(_) => "unsupported",
            _ => "input",
        };
        Usage(kind.into(), e.to_string())
    }
}

pub fn usage(kind: &str, msg: impl Into<String>) -> Usage {
    Usage(kind.into(), msg.into())
}

pub fn usage_exit(u: &Usage) -> ExitCode {
    let diag = serde_json::json!({"error": "usage", "kind": u.0, "message": u.1.trim_end()});
    eprintln!("{diag}");
    ExitCode::from(2)
}

pub fn emit(out: Outcome, path: Option<&Path>) -> ExitCode {
    let mut text = out.text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    if let Some(p) = path {
        if let Err(e) = std::fs::write(p, &text) {
            return usage_exit(&usage("io", format!("cannot write {}: {e}", p.display())));
        }
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = lock.write_all(text.as_bytes());
    let _ = lock.flush();
    if out.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}
