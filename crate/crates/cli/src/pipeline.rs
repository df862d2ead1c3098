use std::cell::OnceCell;
use std::path::PathBuf;
use std::time::Instant;

use brauer_commuting::algebra::{BlockCache, GroupBlocks};
use brauer_commuting::brauer::{BrauerContext, DefectData};
use brauer_commuting::commuting::{
    build_a, build_k, clique_witness, principal_clique_check, theorem1_check, APoset, KPoset, Theorem1Report,
};
use brauer_commuting::field::{multiplicative_order, Field};
use brauer_commuting::fusion::theorem2_check;
use brauer_commuting::perm::GroupSpec;
use brauer_commuting::Error;
use serde_json::{json, Value};

use crate::corpus::{BlockSelector, CorpusEntry, Degree};
use crate::report::{CheckRecord, Status, Target};

#[derive(Clone, Debug)]
pub struct Options {
    /// Bound on group orders and on the size of K(b).
    pub max_elements: usize,
    pub max_simplices: usize,
    pub cache_dir: Option<PathBuf>,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            max_elements: 100_000,
            max_simplices: 100_000,
            cache_dir: None,
            timings: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Theorem1,
    Theorem2,
    Nonclique,
    PrincipalType,
    Homology,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Theorem1,
        Check::Theorem2,
        Check::Nonclique,
        Check::PrincipalType,
        Check::Homology,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Theorem1 => "theorem1",
            Check::Theorem2 => "theorem2",
            Check::Nonclique => "nonclique",
            Check::PrincipalType => "principal-type",
            Check::Homology => "homology",
        }
    }
}

/// Field degree making the field a splitting field for G.
pub fn auto_split_degree(group: &brauer_commuting::perm::PermGroup, p: u32) -> u32 {
    let mut m = group.exponent();
    while m % p as u64 == 0 {
        m /= p as u64;
    }
    multiplicative_order(p as u64, m) as u32
}

/// A group with its blocks over a chosen field.
pub struct Session {
    pub spec: GroupSpec,
    pub ctx: BrauerContext,
}

impl Session {
    pub fn open(spec: &GroupSpec, p: u32, degree: Degree, opts: &Options) -> Result<Session, Error> {
        let group = spec.build(opts.max_elements)?;
        let d = match degree {
            Degree::Fixed(d) => d,
            Degree::AutoSplit => auto_split_degree(&group, p),
        };
        let field = Field::new(p, d)?;
        let blocks = match &opts.cache_dir {
            Some(dir) => BlockCache::new(dir).get_or_compute(&spec.canonical(), &group, &field)?,
            None => GroupBlocks::compute(&group, &field)?,
        };
        Ok(Session {
            spec: spec.clone(),
            ctx: BrauerContext::from_blocks(blocks),
        })
    }

    pub fn for_entry(entry: &CorpusEntry, opts: &Options) -> Result<Session, Error> {
        Session::open(&entry.group, entry.p, entry.degree, opts)
    }

    pub fn target(&self, block: Option<usize>) -> Target {
        Target {
            group: self.spec.name(),
            p: self.ctx.p(),
            d: self.ctx.field().d(),
            block,
        }
    }

    pub fn resolve(&self, sel: BlockSelector) -> Result<Vec<usize>, Error> {
        let n = self.ctx.num_blocks();
        let principal = |b: usize| self.ctx.block(b).principal;
        Ok(match sel {
            BlockSelector::Principal => (0..n).filter(|&b| principal(b)).collect(),
            BlockSelector::Nonprincipal => (0..n).filter(|&b| !principal(b)).collect(),
            BlockSelector::All => (0..n).collect(),
            BlockSelector::Index(i) if i < n => vec![i],
            BlockSelector::Index(i) => return Err(Error::Input(format!("block {i} out of range, {n} blocks"))),
        })
    }

    pub fn defect(&self, b: usize) -> Result<DefectData, Error> {
        self.ctx.defect_data(b)
    }

    pub fn posets(&self, b: usize, opts: &Options) -> Result<(APoset, KPoset), Error> {
        let a = build_a(&self.ctx, b)?;
        let k = build_k(&self.ctx, b, &a, opts.max_elements)?;
        Ok((a, k))
    }

    /// Runs `checks` on block `b`, one record per check.
    pub fn verify_block(&self, b: usize, checks: &[Check], opts: &Options) -> Vec<CheckRecord> {
        let target = self.target(Some(b));
        let record = |check: Check, status, witnesses: Vec<String>, details, started: Instant| CheckRecord {
            name: check.name().to_string(),
            target: target.clone(),
            status,
            witnesses,
            details,
            timing_ms: opts.timings.then(|| started.elapsed().as_millis() as u64),
        };
        let started = Instant::now();
        let needs_posets = checks.iter().any(|&c| c != Check::PrincipalType);
        let posets = if needs_posets { Some(self.posets(b, opts)) } else { None };
        let t1 = OnceCell::new();
        let mut out = Vec::new();
        for &check in checks {
            let started = if out.is_empty() { started } else { Instant::now() };
            let result = match (&posets, check) {
                (_, Check::PrincipalType) => self.principal_type(b),
                (Some(Ok((a, k))), _) => self.poset_check(b, check, a, k, &t1, opts),
                (Some(Err(e)), _) => Err(e.clone()),
                (None, _) => unreachable!(),
            };
            out.push(match result {
                Ok((status, witnesses, details)) => record(check, status, witnesses, details, started),
                Err(Error::TooMany(n, what)) => record(
                    check,
                    Status::Skipped,
                    vec![format!("more than {n} {what}")],
                    Value::Null,
                    started,
                ),
                Err(e) => record(check, Status::Fail, vec![e.to_string()], Value::Null, started),
            });
        }
        out
    }

    fn principal_type(&self, b: usize) -> Result<(Status, Vec<String>, Value), Error> {
        let pt = self.ctx.principal_type(b)?;
        let details = json!({ "checked": pt.checked });
        Ok((Status::from_bool(pt.holds), pt.failure.into_iter().collect(), details))
    }

    fn poset_check(
        &self,
        b: usize,
        check: Check,
        a: &APoset,
        k: &KPoset,
        t1: &OnceCell<Result<Theorem1Report, Error>>,
        opts: &Options,
    ) -> Result<(Status, Vec<String>, Value), Error> {
        let ctx = &self.ctx;
        let theorem1 = || t1.get_or_init(|| theorem1_check(ctx, a, k, opts.max_simplices)).clone();
        match check {
            Check::Theorem1 => {
                let r = theorem1()?;
                let ok = r.psi_phi_identity.holds && r.below_phi_psi.holds && r.quillen.pass;
                let witnesses = [&r.psi_phi_identity, &r.below_phi_psi]
                    .into_iter()
                    .chain(&r.quillen.conditions)
                    .filter_map(|c| c.witness.as_ref().map(|w| format!("{}: {w}", c.name)))
                    .collect();
                let details = json!({
                    "a_size": r.a_size,
                    "k_size": r.k_size,
                    "psi_phi_identity": r.psi_phi_identity,
                    "below_phi_psi": r.below_phi_psi,
                    "quillen": r.quillen,
                });
                Ok((Status::from_bool(ok), witnesses, details))
            }
            Check::Homology => {
                let r = theorem1()?;
                let mut witnesses = Vec::new();
                if r.euler_a != r.euler_k {
                    witnesses.push(format!("Euler characteristics {} and {}", r.euler_a, r.euler_k));
                }
                let status = match &r.homology {
                    Some(h) if !h.agree => {
                        witnesses.push(format!("A: {}; K: {}", h.a, h.k));
                        Status::Fail
                    }
                    _ if !witnesses.is_empty() => Status::Fail,
                    Some(_) => Status::Pass,
                    None => {
                        witnesses.extend(r.skipped.clone());
                        Status::Skipped
                    }
                };
                let details = json!({
                    "euler_a": r.euler_a.to_string(),
                    "euler_k": r.euler_k.to_string(),
                    "homology": r.homology,
                    "skipped": r.skipped,
                });
                Ok((status, witnesses, details))
            }
            Check::Theorem2 => {
                let r = theorem2_check(ctx, b, k)?;
                let witnesses = [&r.forward_well_defined, &r.eta_well_defined, &r.mutually_inverse]
                    .into_iter()
                    .filter_map(|c| c.witness.clone())
                    .chain(r.iso.witness.clone())
                    .collect();
                Ok((Status::from_bool(r.pass), witnesses, serde_json::to_value(&r).expect("serializable")))
            }
            Check::Nonclique => {
                let obstruction = clique_witness(ctx, b, k);
                let principal = ctx.block(b).principal;
                let mut witnesses = Vec::new();
                let mut ok = true;
                if let Some(o) = &obstruction {
                    witnesses.push(format!("{} generating {}", o.labels.join(" "), o.generated.short_label()));
                    ok &= o.brauer_vanishes && !principal;
                }
                let iso = if principal {
                    let iso = principal_clique_check(ctx, k)?;
                    ok &= iso.pass;
                    witnesses.extend(iso.witness.clone());
                    Some(iso)
                } else {
                    None
                };
                let details = json!({ "obstruction": obstruction, "clique_complex": iso });
                Ok((Status::from_bool(ok), witnesses, details))
            }
            Check::PrincipalType => unreachable!(),
        }
    }
}

/// The first symmetric group in `range` with a nonprincipal 2-block whose defect group
/// is dihedral of order 8. Principal blocks are listed but never count as hits.
pub fn find_dihedral_block(
    range: std::ops::RangeInclusive<usize>,
    opts: &Options,
) -> Result<(Vec<String>, Option<(usize, usize)>), Error> {
    let mut log = Vec::new();
    for n in range {
        let session = Session::open(&GroupSpec::Symmetric { n }, 2, Degree::Fixed(1), opts)?;
        for b in 0..session.ctx.num_blocks() {
            let d = session.defect(b)?;
            let principal = session.ctx.block(b).principal;
            let dihedral = d.fingerprint.is_dihedral_8();
            log.push(format!(
                "S{n} block {b}{}: defect order {}{}",
                if principal { " (principal)" } else { "" },
                d.order,
                if dihedral { ", dihedral" } else { "" }
            ));
            if dihedral && !principal {
                return Ok((log, Some((n, b))));
            }
        }
    }
    Ok((log, None))
}
