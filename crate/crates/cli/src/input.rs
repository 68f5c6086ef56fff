//! Reading command arguments: literal text, `@file`, or `-` for stdin, and
//! the short element forms accepted in place of a full element body.

use std::cell::OnceCell;
use std::fs;
use std::io::Read;

use transfin::analytic::{AlphabetSystem, MonoMap};
use transfin::lexspace::parse_base;
use transfin::rat::parse_rat;
use transfin::seqmaps::{AutoSpec, SaturatedSet};
use transfin::treekit::TreeSpec;
use transfin::{BaseOrder, Error, LexElem, Ordinal, Rat, Sign, Value};

use crate::CliError;

pub struct Inputs {
    stdin: OnceCell<String>,
}

impl Inputs {
    pub fn new() -> Self {
        Inputs { stdin: OnceCell::new() }
    }

    /// Resolves `-` and `@path`; anything else is taken literally.
    pub fn text(&self, arg: &str) -> Result<String, CliError> {
        if arg == "-" {
            if self.stdin.get().is_none() {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
                let _ = self.stdin.set(buf);
            }
            return Ok(self.stdin.get().expect("just set").trim().to_string());
        }
        if let Some(path) = arg.strip_prefix('@') {
            return fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")));
        }
        Ok(arg.to_string())
    }

    pub fn ordinal(&self, arg: &str) -> Result<Ordinal, CliError> {
        Ok(self.text(arg)?.trim().parse()?)
    }

    pub fn rat(&self, arg: &str) -> Result<Rat, CliError> {
        Ok(parse_rat(self.text(arg)?.trim())?)
    }

    /// A full element (`base=..; segs=[..]`) or a short body read over
    /// `base`: either a segment list `w : cycle 0,1 ; ...` or a single
    /// payload with its length left out (`vals 1,2`, `const 0`,
    /// `cycle 0,1`; the last two run for `w`).
    pub fn elem(&self, arg: &str, base: &BaseOrder) -> Result<LexElem, CliError> {
        let text = self.text(arg)?;
        let t = text.trim();
        if t.contains("segs=") {
            return Ok(t.parse()?);
        }
        let body = if t.contains(':') {
            t.to_string()
        } else {
            let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
            match kw {
                "vals" => format!("{} : {t}", rest.split(',').count()),
                "const" | "cycle" => format!("w : {t}"),
                _ => return Err(Error::parse(0, "expected an element, a segment list or vals/const/cycle").into()),
            }
        };
        Ok(format!("{base}; segs=[ {body} ]").parse()?)
    }

    /// Signs are short enough that `-` always means minus, never stdin.
    pub fn sign(&self, arg: &str) -> Result<Sign, CliError> {
        match arg.trim() {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::parse(0, format!("sign must be + or -, got {other:?}")).into()),
        }
    }

    /// Comma-separated rationals; empty text is the empty word.
    pub fn values(&self, arg: &str) -> Result<Vec<Value>, CliError> {
        let text = self.text(arg)?;
        let t = text.trim();
        if t.is_empty() {
            return Ok(Vec::new());
        }
        Ok(t.split(',').map(|v| parse_rat(v.trim())).collect::<Result<_, _>>()?)
    }

    pub fn ints(&self, arg: &str) -> Result<Vec<i64>, CliError> {
        let text = self.text(arg)?;
        let t = text.trim();
        if t.is_empty() {
            return Ok(Vec::new());
        }
        t.split(',')
            .map(|v| v.trim().parse::<i64>().map_err(|e| Error::parse(0, format!("{v:?}: {e}")).into()))
            .collect()
    }

    pub fn map(&self, arg: &str) -> Result<MonoMap, CliError> {
        Ok(self.text(arg)?.parse()?)
    }

    /// Multi-line fixtures may also be given inline with `|` between lines.
    fn lines(&self, arg: &str) -> Result<String, CliError> {
        let text = self.text(arg)?;
        Ok(if text.contains('\n') { text } else { text.replace('|', "\n") })
    }

    pub fn tree(&self, arg: &str) -> Result<TreeSpec, CliError> {
        Ok(self.lines(arg)?.parse()?)
    }

    /// Generators one per line (or separated by `|`), each a full or short
    /// element over `base`; an optional `[W]` header line is skipped.
    pub fn saturated(&self, arg: &str, base: &BaseOrder) -> Result<SaturatedSet, CliError> {
        let text = self.lines(arg)?;
        let gens = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#') && *l != "[W]")
            .map(|l| self.elem(l, base))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SaturatedSet::new(gens)?)
    }

    /// `zZ`, `zN`, `flat`, or a fixture.
    pub fn system(&self, arg: &str) -> Result<AlphabetSystem, CliError> {
        match arg {
            "zZ" => Ok(AlphabetSystem::dyadic_z()),
            "zN" => Ok(AlphabetSystem::dyadic_n()),
            "flat" => Ok(AlphabetSystem::flat_example()),
            _ => Ok(self.lines(arg)?.parse()?),
        }
    }

    /// Entries `<word> -> <value>` separated by `;`, the word a
    /// comma-separated list in brackets: `[] -> 1; [0,2] -> -1`.
    pub fn auto(&self, arg: &str) -> Result<AutoSpec, CliError> {
        let text = self.text(arg)?;
        let mut spec = AutoSpec::default();
        for entry in text.split([';', '\n']).map(str::trim).filter(|e| !e.is_empty()) {
            let (w, v) = entry
                .split_once("->")
                .ok_or_else(|| Error::parse(0, format!("entry {entry:?} needs '->'")))?;
            let w = w.trim();
            let inner = w
                .strip_prefix('[')
                .and_then(|w| w.strip_suffix(']'))
                .ok_or_else(|| Error::parse(0, format!("word {w:?} must be bracketed")))?;
            spec.entries.insert(self.values(inner)?, parse_rat(v.trim())?);
        }
        Ok(spec)
    }

    /// Lines `<element> => <ordinal>`.
    pub fn universe(&self, arg: &str) -> Result<(Vec<LexElem>, Vec<Ordinal>), CliError> {
        let text = self.lines(arg)?;
        let mut elems = Vec::new();
        let mut h0 = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (e, h) = line
                .split_once("=>")
                .ok_or_else(|| Error::parse(0, format!("line {line:?} needs '=>'")))?;
            elems.push(e.trim().parse()?);
            h0.push(h.trim().parse()?);
        }
        Ok((elems, h0))
    }
}

pub fn base(text: &str) -> BaseOrder {
    parse_base(text, text).expect("built-in base")
}
