use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use brauer_commuting::fusion::{commuting_category, iso_class_poset, FusionSystem};
use brauer_commuting::perm::{GroupSpec, PermGroup, Permutation};
use brauer_commuting::topo::{poset_dot, poset_json, Poset};
use brauer_commuting::Error;
use serde_json::json;

use crate::corpus::{corpus, BlockSelector, CorpusEntry, Degree};
use crate::pipeline::{find_dihedral_block, Check, Options, Session};
use crate::report::{CheckRecord, Status, VerificationReport};

/// Text produced by a command and the process exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

pub fn blocks(spec: &GroupSpec, p: u32, degree: Degree, format: Format, opts: &Options) -> Result<Outcome, Error> {
    let s = Session::open(spec, p, degree, opts)?;
    let top = s.ctx.top();
    let mut rows = Vec::new();
    for b in 0..s.ctx.num_blocks() {
        let block = s.ctx.block(b);
        let d = s.defect(b)?;
        rows.push(json!({
            "index": b,
            "principal": block.principal,
            "augmentation": top.augmentation(&block.coords).0,
            "defect_order": d.order,
            "defect_group": d.defect_group,
            "fingerprint": d.fingerprint,
            "dihedral": d.fingerprint.is_dihedral_8(),
        }));
    }
    let target = s.target(None);
    let text = match format {
        Format::Json => {
            let doc = json!({ "target": target, "blocks": rows });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        _ => {
            let mut out = format!("{target}: {} block(s)\n", rows.len());
            for r in &rows {
                out.push_str(&format!(
                    "block {}: augmentation {}, defect order {} {}{}{}\n",
                    r["index"],
                    r["augmentation"],
                    r["defect_order"],
                    r["defect_group"].as_str().unwrap_or_default(),
                    if r["dihedral"] == true { ", dihedral" } else { "" },
                    if r["principal"] == true { ", principal" } else { "" },
                ));
            }
            out
        }
    };
    Ok(Outcome { text, code: 0 })
}

fn verify_entry(entry: &CorpusEntry, checks: &[Check], opts: &Options) -> Vec<CheckRecord> {
    let failed = |name: &str, e: Error| CheckRecord {
        name: name.to_string(),
        target: crate::report::Target {
            group: entry.group.name(),
            p: entry.p,
            d: match entry.degree {
                Degree::Fixed(d) => d,
                Degree::AutoSplit => 0,
            },
            block: None,
        },
        status: match e {
            Error::GroupTooLarge(_) | Error::TooMany(..) | Error::FieldTooLarge { .. } => Status::Skipped,
            _ => Status::Fail,
        },
        witnesses: vec![e.to_string()],
        details: serde_json::Value::Null,
        timing_ms: None,
    };
    let session = match Session::for_entry(entry, opts) {
        Ok(s) => s,
        Err(e) => return vec![failed("setup", e)],
    };
    let blocks = match session.resolve(entry.blocks) {
        Ok(b) => b,
        Err(e) => return vec![failed("setup", e)],
    };
    blocks
        .into_iter()
        .flat_map(|b| session.verify_block(b, checks, opts))
        .collect()
}

/// Runs `checks` over `entries` on `jobs` threads; record order follows the entries.
pub fn verify(entries: &[CorpusEntry], checks: &[Check], jobs: usize, opts: &Options) -> VerificationReport {
    let results: Mutex<Vec<Option<Vec<CheckRecord>>>> = Mutex::new(vec![None; entries.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.max(1).min(entries.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= entries.len() {
                    break;
                }
                let records = verify_entry(&entries[i], checks, opts);
                results.lock().unwrap()[i] = Some(records);
            });
        }
    });
    let checks = results.into_inner().unwrap().into_iter().flatten().flatten().collect();
    VerificationReport::new(checks)
}

pub fn corpus_entries(include_slow: bool) -> Vec<CorpusEntry> {
    corpus().into_iter().filter(|e| include_slow || !e.slow).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    A,
    K,
    KOrbit,
    BrauerPairs,
    IsoClasses,
}

/// Subgroups given as lists of generators, each a list of 1-based cycles.
pub fn parse_family(g: &PermGroup, text: &str) -> Result<Vec<PermGroup>, Error> {
    let raw: Vec<Vec<Vec<Vec<usize>>>> =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad subgroup family: {e}")))?;
    raw.iter()
        .map(|gens| {
            let perms = gens
                .iter()
                .map(|cycles| Permutation::from_cycles(g.degree(), cycles))
                .collect::<Result<Vec<_>, _>>()?;
            g.subgroup(perms)
        })
        .collect()
}

pub struct PosetRequest<'a> {
    pub spec: &'a GroupSpec,
    pub p: u32,
    pub degree: Degree,
    pub block: BlockSelector,
    pub which: Which,
    pub format: Format,
    pub family: Option<&'a str>,
}

pub fn poset(req: &PosetRequest, opts: &Options) -> Result<Outcome, Error> {
    let s = Session::open(req.spec, req.p, req.degree, opts)?;
    let blocks = s.resolve(req.block)?;
    let [b] = blocks[..] else {
        return Err(Error::Input(format!("block selector {} must pick one block", req.block)));
    };
    let (poset, orbits): (Poset, Option<Vec<usize>>) = match req.which {
        Which::BrauerPairs => {
            let family = match req.family {
                Some(text) => parse_family(s.ctx.group(), text)?,
                None => s.defect(b)?.defect_group.all_subgroups(),
            };
            let bp = s.ctx.containment_poset(b, &family)?;
            let orbits = bp.gposet().transpose()?.map(|g| g.orbits());
            (bp.poset, orbits)
        }
        Which::IsoClasses => {
            let fs = FusionSystem::new(&s.ctx, b)?;
            let cat = commuting_category(&s.ctx, &fs)?;
            (iso_class_poset(&cat)?.poset, None)
        }
        Which::A | Which::K | Which::KOrbit => {
            let (a, k) = s.posets(b, opts)?;
            match req.which {
                Which::A => (a.gposet.poset().clone(), Some(a.gposet.orbits())),
                Which::K => (k.poset().clone(), Some(k.gposet.orbits())),
                _ => (k.orbit_poset()?.poset, None),
            }
        }
    };
    let text = match req.format {
        Format::Dot => poset_dot(&poset, "P", orbits.as_deref()),
        _ => serde_json::to_string_pretty(&poset_json(&poset, orbits.as_deref())).expect("serializable") + "\n",
    };
    Ok(Outcome { text, code: 0 })
}

pub fn dihedral(from: usize, to: usize, opts: &Options) -> Result<Outcome, Error> {
    let (log, hit) = find_dihedral_block(from..=to, opts)?;
    let mut text: String = log.iter().map(|l| l.clone() + "\n").collect();
    let code = match hit {
        Some((n, b)) => {
            text.push_str(&format!("first hit: n = {n}, block {b}\n"));
            0
        }
        None => {
            text.push_str(&format!("none for n in {from}..={to}\n"));
            1
        }
    };
    Ok(Outcome { text, code })
}
