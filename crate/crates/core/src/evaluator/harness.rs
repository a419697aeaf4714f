use std::collections::BTreeMap;
use std::fs::File;
use std::os::unix::process::CommandExt;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitStatus, Stdio};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::completer::GeneratedCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Compile,
    Test,
}

/// Compile and test command templates. `{script}` and `{workspace}` expand to
/// quoted paths inside the temp workspace; `{name}` expands from `vars`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HarnessConfig {
    pub compile: Option<String>,
    pub test: Option<String>,
    #[serde(with = "secs")]
    pub compile_timeout: Duration,
    #[serde(with = "secs")]
    pub test_timeout: Duration,
    /// File the generated code is written to, relative to the workspace.
    pub script_name: String,
    pub vars: BTreeMap<String, String>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            compile: None,
            test: None,
            compile_timeout: Duration::from_secs(60),
            test_timeout: Duration::from_secs(60),
            script_name: "Candidate.java".into(),
            vars: BTreeMap::new(),
        }
    }
}

mod secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let v = f64::deserialize(d)?;
        Duration::try_from_secs_f64(v).map_err(serde::de::Error::custom)
    }
}

impl HarnessConfig {
    pub fn load(path: &Path) -> Result<Self, EvalError> {
        let text = std::fs::read_to_string(path).map_err(|e| EvalError::io(path, e))?;
        toml::from_str(&text).map_err(|e| EvalError::Config { path: path.to_path_buf(), message: e.to_string() })
    }

    fn expand(&self, template: &str, workspace: &Path, script: &Path) -> String {
        let mut out = template.replace("{script}", &quote(&script.to_string_lossy())).replace("{workspace}", &quote(&workspace.to_string_lossy()));
        for (k, v) in &self.vars {
            out = out.replace(&format!("{{{k}}}"), &quote(v));
        }
        out
    }
}

fn quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "'\\''"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildPassResult {
    pub compiled: bool,
    pub tested: bool,
    pub pass: bool,
    pub compiler_output: String,
    pub test_output: String,
    /// The stage that was killed for exceeding its timeout.
    pub timed_out: Option<Stage>,
}

impl BuildPassResult {
    pub fn failed() -> Self {
        BuildPassResult { compiled: false, tested: false, pass: false, compiler_output: String::new(), test_output: String::new(), timed_out: None }
    }
}

struct StageRun {
    ok: bool,
    output: String,
    timed_out: bool,
}

fn run_stage(command: &str, cwd: &Path, timeout: Duration, log: &Path) -> Result<StageRun, EvalError> {
    let out = File::create(log).map_err(|e| EvalError::io(log, e))?;
    let err = out.try_clone().map_err(|e| EvalError::io(log, e))?;
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(command)
        .current_dir(cwd)
        .stdin(Stdio::null())
        .stdout(out)
        .stderr(err)
        .process_group(0)
        .spawn()
        .map_err(|e| EvalError::WorkspaceSetupFailed(format!("cannot start sh: {e}")))?;
    let start = Instant::now();
    let status: Option<ExitStatus> = loop {
        match child.try_wait().map_err(|e| EvalError::io(log, e))? {
            Some(s) => break Some(s),
            None if start.elapsed() >= timeout => {
                // the whole group, so grandchildren die too
                unsafe {
                    libc::kill(-(child.id() as i32), libc::SIGKILL);
                }
                let _ = child.wait();
                break None;
            }
            None => std::thread::sleep(Duration::from_millis(5)),
        }
    };
    let output = std::fs::read_to_string(log).unwrap_or_default();
    Ok(StageRun { ok: status.is_some_and(|s| s.success()), output, timed_out: status.is_none() })
}

fn copy_tree(from: &Path, to: &Path) -> Result<(), EvalError> {
    for entry in walkdir::WalkDir::new(from).sort_by_file_name() {
        let entry = entry.map_err(|e| EvalError::WorkspaceSetupFailed(e.to_string()))?;
        let rel = entry.path().strip_prefix(from).expect("walk stays under its root");
        let dest = to.join(rel);
        let r = if entry.file_type().is_dir() { std::fs::create_dir_all(&dest) } else { std::fs::copy(entry.path(), &dest).map(|_| ()) };
        r.map_err(|e| EvalError::WorkspaceSetupFailed(format!("{}: {e}", dest.display())))?;
    }
    Ok(())
}

/// Compile the code in a fresh copy of `scaffold`, then run the test command
/// if compilation succeeded. Paths of the temp workspace are replaced by
/// `<workspace>` in the captured output.
pub fn build_pass(code: &GeneratedCode, scaffold: &Path, cfg: &HarnessConfig) -> Result<BuildPassResult, EvalError> {
    let compile = cfg.compile.as_deref().ok_or_else(|| EvalError::WorkspaceSetupFailed("no compile command configured".into()))?;
    if !scaffold.is_dir() {
        return Err(EvalError::WorkspaceSetupFailed(format!("{} is not a directory", scaffold.display())));
    }
    let tmp = tempfile::Builder::new().prefix("ccci-bp-").tempdir().map_err(|e| EvalError::WorkspaceSetupFailed(e.to_string()))?;
    let ws: PathBuf = tmp.path().join("ws");
    copy_tree(scaffold, &ws)?;
    let script = ws.join(&cfg.script_name);
    std::fs::write(&script, &code.code).map_err(|e| EvalError::WorkspaceSetupFailed(format!("{}: {e}", script.display())))?;
    let scrub = |s: String| s.replace(&*ws.to_string_lossy(), "<workspace>");

    let c = run_stage(&cfg.expand(compile, &ws, &script), &ws, cfg.compile_timeout, &tmp.path().join("compile.log"))?;
    let mut result = BuildPassResult { compiled: c.ok, compiler_output: scrub(c.output), timed_out: c.timed_out.then_some(Stage::Compile), ..BuildPassResult::failed() };
    if !c.ok {
        return Ok(result);
    }
    let Some(test) = cfg.test.as_deref() else {
        result.test_output = "no test command configured".into();
        return Ok(result);
    };
    let t = run_stage(&cfg.expand(test, &ws, &script), &ws, cfg.test_timeout, &tmp.path().join("test.log"))?;
    result.tested = t.ok;
    result.test_output = scrub(t.output);
    if t.timed_out {
        result.timed_out = Some(Stage::Test);
    }
    result.pass = result.compiled && result.tested;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> GeneratedCode {
        GeneratedCode { raw_response: text.into(), code: text.into(), model_name: "t".into(), latency: Duration::ZERO }
    }

    fn scaffold() -> tempfile::TempDir {
        let d = tempfile::tempdir().unwrap();
        std::fs::create_dir(d.path().join("src")).unwrap();
        std::fs::write(d.path().join("src/marker"), "x").unwrap();
        d
    }

    fn cfg(compile: &str, test: &str) -> HarnessConfig {
        HarnessConfig { compile: Some(compile.into()), test: Some(test.into()), ..HarnessConfig::default() }
    }

    #[test]
    fn both_stages() {
        let s = scaffold();
        let c = cfg("test -f src/marker && grep -q good {script}", "echo tested");
        let r = build_pass(&code("good"), s.path(), &c).unwrap();
        assert!(r.compiled && r.tested && r.pass);
        assert_eq!(r.test_output, "tested\n");
        let r = build_pass(&code("bad"), s.path(), &c).unwrap();
        assert!(!r.compiled && !r.tested && !r.pass);
    }

    #[test]
    fn test_failure() {
        let s = scaffold();
        let r = build_pass(&code("x"), s.path(), &cfg("true", "echo no >&2; exit 3")).unwrap();
        assert!(r.compiled && !r.tested && !r.pass);
        assert_eq!(r.test_output, "no\n");
    }

    #[test]
    fn workspace_is_scrubbed_and_vars_expand() {
        let s = scaffold();
        let mut c = cfg("echo {script} {tool}", "true");
        c.vars.insert("tool".into(), "it's".into());
        let r = build_pass(&code("x"), s.path(), &c).unwrap();
        assert_eq!(r.compiler_output, "<workspace>/Candidate.java it's\n");
    }

    #[test]
    fn timeout_kills_the_stage() {
        let s = scaffold();
        let mut c = cfg("sleep 30 & sleep 30; wait", "true");
        c.compile_timeout = Duration::from_millis(200);
        let start = Instant::now();
        let r = build_pass(&code("x"), s.path(), &c).unwrap();
        assert!(start.elapsed() < Duration::from_secs(5));
        assert_eq!(r.timed_out, Some(Stage::Compile));
        assert!(!r.pass);
    }

    #[test]
    fn missing_compile_command() {
        let s = scaffold();
        let c = HarnessConfig::default();
        assert!(matches!(build_pass(&code("x"), s.path(), &c), Err(EvalError::WorkspaceSetupFailed(_))));
    }

    #[test]
    fn toml_config() {
        let c: HarnessConfig = toml::from_str("compile = \"a\"\ncompile_timeout = 1.5\n[vars]\nx = \"y\"\n").unwrap();
        assert_eq!(c.compile.as_deref(), Some("a"));
        assert_eq!(c.compile_timeout, Duration::from_millis(1500));
        assert_eq!(c.test_timeout, Duration::from_secs(60));
        assert_eq!(c.vars["x"], "y");
    }
}
