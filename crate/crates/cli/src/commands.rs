use std::cmp::Ordering;
use std::fmt::Display;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use transfin::analytic::{g_doubleprime, node_width, partition_node, Embedding, Realized};
use transfin::isomaps::{corner_interval_map, glue_at, SimpleTreeIso, UpperMap};
use transfin::seqmaps::{end_equivalent, lift_minus, lift_plus, point_auto, saturated_member, shift, tree_auto_apply};
use transfin::treekit::{max_height_fn, LevelSet, TreeSpec};
use transfin::zerodim::{beta_star, double_cmp, fat_cantor_embed, gap_pair, ray_iso, double_point_inject, clopen_iso, DoublePoint};
use transfin::{BaseOrder, LexElem, OrdLen, Ordinal, Seq};

use crate::input::{base, Inputs};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "transfin", version, about = "Ordinals, lexicographic sequences, trees and order isomorphisms")]
#[command(after_help = "Arguments accept '-' for stdin and '@path' for a file.")]
pub struct Cli {
    /// Machine output; rationals are exact "p/q" strings.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print the bookkeeping of a map.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Depth bound for partition nodes.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Subcommand, Debug)]
pub enum Group {
    /// Ordinal arithmetic in Cantor normal form.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// Elements of lexicographic powers.
    #[command(subcommand)]
    Lex(LexCmd),
    /// Omega-sequences over Z: shifts, end equivalence, automorphisms.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Trees given by tail-like levels.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Explicit order isomorphisms.
    #[command(subcommand)]
    Map(MapCmd),
    /// Double arrow spaces and clopen intervals of 2^alpha.
    #[command(subcommand)]
    Zd(ZdCmd),
    /// Exact rational realizations.
    #[command(subcommand)]
    Real(RealCmd),
}

#[derive(Args, Debug)]
pub struct Two {
    pub a: String,
    pub b: String,
}

#[derive(Args, Debug)]
pub struct One {
    pub a: String,
}

#[derive(Subcommand, Debug)]
pub enum OrdCmd {
    Add(Two),
    Mul(Two),
    Pow(Two),
    /// The c with b + c = a.
    Sub(Two),
    Cmp(Two),
    Cnf(One),
    Taillike(One),
    Limitsplit(One),
    Omegafactor(One),
}

#[derive(Subcommand, Debug)]
pub enum LexCmd {
    Cmp(Two),
    /// x_i.
    Index { x: String, i: String },
    Sum(Two),
    Restrict { x: String, beta: String },
    Translate { x: String, beta: String },
    /// z followed by -1 (sign -) or +1 (sign +) up to alpha.
    Corner { z: String, alpha: String, sign: String },
    /// Concatenates the given elements; with --repeat the list is cycled
    /// over that limit length.
    Flatten {
        #[arg(required = true)]
        elems: Vec<String>,
        #[arg(long)]
        repeat: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SeqCmd {
    Shift(One),
    Endeq(Two),
    /// Automorphism x_i + m(x|i); m as `[] -> 1; [0] -> -1`.
    Auto { m: String, x: String },
    Pointauto { p: String, q: String, x: String },
    #[command(name = "lift+")]
    LiftPlus(One),
    #[command(name = "lift-")]
    LiftMinus(One),
    /// Membership in the union of the end equivalence classes of the
    /// generators (one per line, or separated by '|').
    Member { w: String, s: String },
}

#[derive(Subcommand, Debug)]
pub enum TreeCmd {
    Member { tree: String, p: String },
    Height { tree: String, s: String },
    /// Largest height function below the given table; lines `<elem> => <ord>`.
    Maxh { universe: String },
    /// Adds a level: `all` or generators separated by '|'.
    Extend { tree: String, beta: String, set: String },
}

#[derive(Subcommand, Debug)]
pub enum MapCmd {
    /// Simple tree of `J`-valued sequences onto `Q^alpha`.
    #[command(alias = "prop63")]
    TreeIso { alpha: String, x: String },
    /// Inverse of `tree-iso`.
    #[command(alias = "prop63inv")]
    TreeIsoInv { alpha: String, z: String },
    /// `[x-, x+]` onto `[y, z]`.
    #[command(alias = "babcock")]
    Corner { alpha: String, y: String, z: String, x: String },
    /// `[c, b]` onto the standard upper interval.
    #[command(alias = "thm42")]
    Upper { alpha: String, c: String, b: String, x: String },
    /// Joins two line maps that agree at `a`.
    Glue { f1: String, f2: String, a: String },
}

#[derive(Subcommand, Debug)]
pub enum ZdCmd {
    Gap(Two),
    Betastar(One),
    /// Clopen `[x, 1]` onto `[0, 1]`.
    #[command(alias = "iso108")]
    Ray { tree: String, x: String, z: String },
    /// Clopen `[x, y]` onto `[0, 1]`.
    #[command(alias = "iso109")]
    Clopen { tree: String, x: String, y: String, z: String },
    Inject { a: String, sign: String, seed: String },
    Fat { t: String, sign: String },
    Cmp(Two),
}

#[derive(Subcommand, Debug)]
pub enum RealCmd {
    /// Composed map and image interval of a finite word of letters.
    Word { system: String, word: String },
    /// Realization of an eventually periodic letter sequence.
    Point { system: String, s: String },
    /// Node of the partition tree of J^alpha along a path of integers.
    Tree { alpha: String, path: String },
    /// e(i) for the embedding of alpha + 1 onto [a, b].
    Embed { alpha: String, a: String, b: String, i: String },
    /// Double point image of t^sign under a monotone map.
    Gpp { map: String, t: String, sign: String },
}

pub struct Out {
    pub text: String,
    pub json: Json,
    pub trace_text: Option<String>,
    pub trace_json: Option<Json>,
    pub notes: Vec<String>,
}

impl Out {
    fn new(text: String, json: Json) -> Self {
        Out { text, json, trace_text: None, trace_json: None, notes: Vec::new() }
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

fn show(x: impl Display) -> Out {
    let s = x.to_string();
    Out::new(s.clone(), Json::String(s))
}

fn boolean(b: bool) -> Out {
    Out::new(b.to_string(), Json::Bool(b))
}

fn ordering(o: Ordering) -> Out {
    show(format!("{o:?}"))
}

fn tree_notes(t: &TreeSpec, out: Out) -> Out {
    if t.verified() {
        out
    } else {
        out.note("unverified coherence")
    }
}

fn q_j() -> BaseOrder {
    base("base=Q; J=-1..1")
}

pub fn run(cli: &Cli) -> Result<Out, CliError> {
    let inp = Inputs::new();
    match &cli.group {
        Group::Ord(c) => ord(&inp, c),
        Group::Lex(c) => lex(&inp, c),
        Group::Seq(c) => seq(&inp, c),
        Group::Tree(c) => tree(&inp, c),
        Group::Map(c) => map(cli, &inp, c),
        Group::Zd(c) => zd(&inp, c),
        Group::Real(c) => real(cli, &inp, c),
    }
}

fn ord(inp: &Inputs, c: &OrdCmd) -> Result<Out, CliError> {
    let two = |t: &Two| -> Result<(Ordinal, Ordinal), CliError> { Ok((inp.ordinal(&t.a)?, inp.ordinal(&t.b)?)) };
    Ok(match c {
        OrdCmd::Add(t) => {
            let (a, b) = two(t)?;
            show(a.add(&b))
        }
        OrdCmd::Mul(t) => {
            let (a, b) = two(t)?;
            show(a.mul(&b))
        }
        OrdCmd::Pow(t) => {
            let (a, b) = two(t)?;
            show(a.pow(&b)?)
        }
        OrdCmd::Sub(t) => {
            let (a, b) = two(t)?;
            show(a.sub_left(&b)?)
        }
        OrdCmd::Cmp(t) => {
            let (a, b) = two(t)?;
            ordering(a.cmp(&b))
        }
        OrdCmd::Cnf(o) => {
            let a = inp.ordinal(&o.a)?;
            let terms: Vec<Json> = a
                .terms()
                .iter()
                .map(|t| json!({ "exp": t.exp.to_string(), "coef": t.coef.to_string() }))
                .collect();
            Out::new(a.to_string(), Json::Array(terms))
        }
        OrdCmd::Taillike(o) => boolean(inp.ordinal(&o.a)?.is_tail_like()?),
        OrdCmd::Limitsplit(o) => {
            let (lam, k) = inp.ordinal(&o.a)?.limit_split();
            Out::new(format!("{lam} {k}"), json!({ "limit": lam.to_string(), "k": k.to_string() }))
        }
        OrdCmd::Omegafactor(o) => show(inp.ordinal(&o.a)?.omega_factor()?),
    })
}

fn lex(inp: &Inputs, c: &LexCmd) -> Result<Out, CliError> {
    let b = q_j();
    let e = |s: &str| inp.elem(s, &b);
    Ok(match c {
        LexCmd::Cmp(t) => ordering(e(&t.a)?.lex_cmp(&e(&t.b)?)?),
        LexCmd::Index { x, i } => show(e(x)?.index(&inp.ordinal(i)?)?),
        LexCmd::Sum(t) => show(e(&t.a)?.sum(&e(&t.b)?)?),
        LexCmd::Restrict { x, beta } => show(e(x)?.restrict(&inp.ordinal(beta)?)?),
        LexCmd::Translate { x, beta } => show(e(x)?.translate(&inp.ordinal(beta)?)?),
        LexCmd::Corner { z, alpha, sign } => {
            let alpha: OrdLen = inp.text(alpha)?.trim().parse()?;
            show(e(z)?.corner(&alpha, inp.sign(sign)?)?)
        }
        LexCmd::Flatten { elems, repeat } => {
            let parts = elems.iter().map(|s| e(s)).collect::<Result<Vec<_>, _>>()?;
            let outer = match repeat {
                None => Seq::word(parts),
                Some(len) => Seq::cycle(parts, inp.text(len)?.trim().parse()?)?,
            };
            show(LexElem::flatten(&outer)?)
        }
    })
}

fn seq(inp: &Inputs, c: &SeqCmd) -> Result<Out, CliError> {
    let b = base("base=Z");
    let e = |s: &str| inp.elem(s, &b);
    Ok(match c {
        SeqCmd::Shift(o) => show(shift(&e(&o.a)?)?),
        SeqCmd::Endeq(t) => match end_equivalent(&e(&t.a)?, &e(&t.b)?)? {
            Some((i, j)) => Out::new(format!("{i} {j}"), json!([i, j])),
            None => Out::new("none".into(), Json::Null),
        },
        SeqCmd::Auto { m, x } => show(tree_auto_apply(&inp.auto(m)?, &e(x)?)?),
        SeqCmd::Pointauto { p, q, x } => show(point_auto(&e(p)?, &e(q)?, &e(x)?)?),
        SeqCmd::LiftPlus(o) => show(lift_plus(&e(&o.a)?)?),
        SeqCmd::LiftMinus(o) => show(lift_minus(&e(&o.a)?)?),
        SeqCmd::Member { w, s } => boolean(saturated_member(&inp.saturated(w, &b)?, &e(s)?)?),
    })
}

fn tree(inp: &Inputs, c: &TreeCmd) -> Result<Out, CliError> {
    Ok(match c {
        TreeCmd::Member { tree, p } => {
            let t = inp.tree(tree)?;
            let out = boolean(t.member(&inp.elem(p, t.base())?)?);
            tree_notes(&t, out)
        }
        TreeCmd::Height { tree, s } => {
            let t = inp.tree(tree)?;
            let out = show(t.height_of(&inp.elem(s, t.base())?)?);
            tree_notes(&t, out)
        }
        TreeCmd::Maxh { universe } => {
            let (u, h0) = inp.universe(universe)?;
            let h = max_height_fn(&u, &h0)?;
            let text = h.universe.iter().zip(&h.table).map(|(e, v)| format!("{e} => {v}")).collect::<Vec<_>>();
            let js = h.table.iter().map(|v| Json::String(v.to_string())).collect();
            Out::new(text.join("\n"), Json::Array(js))
        }
        TreeCmd::Extend { tree, beta, set } => {
            let t = inp.tree(tree)?;
            let set_text = inp.text(set)?;
            let set = if set_text.trim() == "all" {
                LevelSet::All
            } else {
                let gens = set_text.split(['|', '\n']).map(str::trim).filter(|g| !g.is_empty());
                LevelSet::Gens(gens.map(|g| inp.elem(g, t.base())).collect::<Result<_, _>>()?)
            };
            let ext = t.extend_choice(&inp.ordinal(beta)?, set)?;
            let out = show(&ext);
            tree_notes(&ext, out)
        }
    })
}

fn map(cli: &Cli, inp: &Inputs, c: &MapCmd) -> Result<Out, CliError> {
    let b = q_j();
    let e = |s: &str| inp.elem(s, &b);
    Ok(match c {
        MapCmd::TreeIso { alpha, x } => {
            let iso = SimpleTreeIso::new(&inp.ordinal(alpha)?)?;
            let (y, trace) = iso.forward(&e(x)?)?;
            let mut out = show(&y);
            if cli.trace {
                out.trace_text = Some(trace.to_string());
                let steps = trace
                    .steps
                    .iter()
                    .map(|s| {
                        json!({
                            "out": s.out_start.to_string(),
                            "in": s.in_start.to_string(),
                            "mark": s.mark.to_string(),
                        })
                    })
                    .collect();
                out.trace_json = Some(Json::Array(steps));
            }
            out
        }
        MapCmd::TreeIsoInv { alpha, z } => show(SimpleTreeIso::new(&inp.ordinal(alpha)?)?.inverse(&e(z)?)?),
        MapCmd::Corner { alpha, y, z, x } => show(corner_interval_map(&e(y)?, &e(z)?, &e(x)?, &inp.ordinal(alpha)?)?),
        MapCmd::Upper { alpha, c, b, x } => {
            let m = UpperMap::new(&e(c)?, &e(b)?, &inp.ordinal(alpha)?)?;
            let x = e(x)?;
            let piece = m.piece_of(&x)?;
            let mut out = show(m.apply(&x)?);
            if cli.trace {
                let p = piece.map_or("end".to_string(), |k| k.to_string());
                out.trace_text = Some(format!("{}\npiece {p}", m.describe_k()));
                out.trace_json = Some(json!({ "k": m.describe_k(), "piece": p }));
            }
            out
        }
        MapCmd::Glue { f1, f2, a } => show(glue_at(&inp.map(f1)?, &inp.map(f2)?, &inp.rat(a)?)?),
    })
}

fn zd(inp: &Inputs, c: &ZdCmd) -> Result<Out, CliError> {
    let b = base("base=2");
    let e = |s: &str| inp.elem(s, &b);
    Ok(match c {
        ZdCmd::Gap(t) => boolean(gap_pair(&e(&t.a)?, &e(&t.b)?)?),
        ZdCmd::Betastar(o) => show(beta_star(&e(&o.a)?)?),
        ZdCmd::Ray { tree, x, z } => {
            let t = inp.tree(tree)?;
            tree_notes(&t, show(ray_iso(&e(x)?, &e(z)?, &t)?))
        }
        ZdCmd::Clopen { tree, x, y, z } => {
            let t = inp.tree(tree)?;
            tree_notes(&t, show(clopen_iso(&e(x)?, &e(y)?, &e(z)?, &t)?))
        }
        ZdCmd::Inject { a, sign, seed } => show(double_point_inject(&e(a)?, inp.sign(sign)?, &e(seed)?)?),
        ZdCmd::Fat { t, sign } => show(fat_cantor_embed(&inp.rat(t)?, inp.sign(sign)?)?),
        ZdCmd::Cmp(t) => {
            let p: DoublePoint = inp.text(&t.a)?.parse()?;
            let q: DoublePoint = inp.text(&t.b)?.parse()?;
            ordering(double_cmp(&p, &q)?)
        }
    })
}

fn real(cli: &Cli, inp: &Inputs, c: &RealCmd) -> Result<Out, CliError> {
    Ok(match c {
        RealCmd::Word { system, word } => {
            let sys = inp.system(system)?;
            let (f, iv) = sys.word_map(&inp.values(word)?)?;
            Out::new(format!("{f}\n{iv}"), json!({ "map": f.to_string(), "interval": iv.to_string() }))
        }
        RealCmd::Point { system, s } => {
            let b = if system == "zN" { base("base=N") } else { base("base=Z") };
            let sys = inp.system(system)?;
            match sys.t_s(&inp.elem(s, &b)?)? {
                Realized::Point(p) => show(p),
                Realized::Map(m) => Out::new(format!("map {m}"), json!({ "map": m.to_string() })),
            }
        }
        RealCmd::Tree { alpha, path } => {
            let path = inp.ints(path)?;
            let depth = cli.depth.unwrap_or(path.len());
            let (a, b) = partition_node(&inp.ordinal(alpha)?, &path, depth)?;
            let w = node_width(&a, &b)?;
            Out::new(
                format!("{a}\n{b}\nwidth {w}"),
                json!({ "lo": a.to_string(), "hi": b.to_string(), "width": w.to_string() }),
            )
        }
        RealCmd::Embed { alpha, a, b, i } => {
            let emb = Embedding::new(inp.ordinal(alpha)?, inp.rat(a)?, inp.rat(b)?)?;
            show(emb.eval(&inp.ordinal(i)?)?)
        }
        RealCmd::Gpp { map, t, sign } => show(g_doubleprime(&inp.map(map)?, &inp.rat(t)?, inp.sign(sign)?)?),
    })
}
