use std::collections::BTreeMap;

use fanweave::basis::{
    basis_commutation_graph, build_pauli2, build_shift_multiply, build_weyl, commutation_graph, compare_ub,
    enumerate_mass, hadamard_fan, overlapping_labels, tag_at_with, CommutationMode, Fan, InvariantVariant, Label,
    Tag, UnitaryBasis, Verdict,
};
use fanweave::combinatorics::latin_from_group;
use fanweave::linalg::{hs_orthogonality_violation, unitarity_residual};
use fanweave::ppt::build_ppt;
use fanweave::tomography::{
    crude_povm, find_partition, is_info_complete, minimal_cover, mub_from_partition, refined_bound, refined_povm,
    s_bound, Povm,
};
use fanweave::Tolerances;
use serde::Serialize;

use crate::input;
use crate::output::{join_labels, sci, size_summary, write_file, CliResult, Failure, Outcome, EXIT_INEQUIVALENT};
use crate::{Cli, Command, ConstructArgs, FansArgs, Kind, PovmArgs, PptArgs, Strategy, TagArgs};

const POVM_SUM_TOL: f64 = 1e-9;
const MUB_TOL: f64 = 1e-9;

struct Ctx {
    seed: u64,
    tol: Tolerances,
}

pub fn run(cli: &Cli) -> CliResult<u8> {
    let ctx = Ctx {
        seed: cli.global.seed,
        tol: input::tolerances(&cli.global.tol)?,
    };
    let outcome = match &cli.command {
        Command::Construct(a) => construct(&ctx, a)?,
        Command::Fans(a) => fans(&ctx, a)?,
        Command::Compare(a) => compare(&ctx, &a.left, &a.right, &a.variant)?,
        Command::Mub(a) => mub(&ctx, a)?,
        Command::Povm(a) => povm(&ctx, a)?,
        Command::Ppt(a) => ppt(&ctx, a)?,
        Command::HadamardFan(a) => hadamard(&ctx, a)?,
    };
    outcome.emit(cli.global.format, cli.global.out.as_deref())
}

fn construct(ctx: &Ctx, a: &ConstructArgs) -> CliResult<Outcome> {
    let (basis, what) = match a.kind {
        Kind::Weyl => {
            let d = a.d.ok_or_else(|| Failure::invalid("--kind weyl needs --d"))?;
            (build_weyl(d)?, format!("weyl basis, d={d}"))
        }
        Kind::Pauli2 => (build_pauli2(), "pauli2 basis, d=4".to_string()),
        Kind::ShiftMultiply => {
            let (latin, source) = match (&a.latin, &a.group) {
                (Some(path), _) => (input::latin(path)?, format!("latin square {}", path.display())),
                (None, Some(g)) => {
                    let variant = a.variant.parse()?;
                    (latin_from_group(&input::group(g)?, variant), format!("group {g}, variant {variant}"))
                }
                (None, None) => return Err(Failure::invalid("--kind shift-multiply needs --group or --latin")),
            };
            let family = input::family(&a.hadamard, latin.size())?;
            let basis = build_shift_multiply(&latin, &family)?;
            let d = basis.d();
            (basis, format!("shift-and-multiply basis, d={d}, {source}, hadamard {}", a.hadamard))
        }
    };
    let mut o = Outcome::new("construct", ctx.seed, &ctx.tol, &basis)?;
    o.line(format!("{what}, {} operators", basis.labels().len()));
    let unit = basis.operators().iter().map(unitarity_residual).fold(0.0, f64::max);
    o.check(format!("unitarity (max residual {})", sci(unit)), unit <= ctx.tol.unitarity);
    if let Some((x, y, r)) = hs_orthogonality_violation(basis.operators())? {
        let (lx, ly) = (&basis.labels()[x], &basis.labels()[y]);
        o.check(
            format!("trace orthogonality (worst pair {lx} {ly}, residual {})", sci(r)),
            r <= ctx.tol.orthogonality,
        );
    }
    Ok(o)
}

/// Fan with its graph-level validation.
fn checked_fan(basis: &UnitaryBasis, x0: Option<&Label>, mode: CommutationMode, tol: &Tolerances) -> CliResult<(Fan, bool)> {
    let graph = match x0 {
        Some(x0) => commutation_graph(&tag_at_with(basis, x0, tol)?, mode, tol)?,
        None => basis_commutation_graph(basis, mode, tol)?,
    };
    let fan = enumerate_mass(&graph);
    let ok = fan.validate(&graph).is_ok();
    Ok((fan, ok))
}

fn fan_summary(fan: &Fan) -> String {
    let mut by_degree: BTreeMap<usize, Vec<Label>> = BTreeMap::new();
    for l in overlapping_labels(fan) {
        by_degree.entry(fan.degree(&l)).or_default().push(l);
    }
    let overlaps = if by_degree.is_empty() {
        "none".to_string()
    } else {
        by_degree
            .iter()
            .map(|(k, ls)| format!("{} ×{k}", join_labels(ls)))
            .collect::<Vec<_>>()
            .join("; ")
    };
    format!(
        "{} MASSes: {}; overlap elements: {overlaps}",
        fan.len(),
        size_summary(fan.masses().iter().map(Vec::len))
    )
}

fn fans(ctx: &Ctx, a: &FansArgs) -> CliResult<Outcome> {
    let basis = input::basis(&a.target.basis)?;
    let mode: CommutationMode = a.target.mode.parse()?;
    if a.all_tags {
        let mut system = BTreeMap::new();
        let mut lines = Vec::new();
        let mut all_ok = true;
        let mut dot = String::new();
        for x0 in basis.labels() {
            let (fan, ok) = checked_fan(&basis, Some(x0), mode, &ctx.tol)?;
            all_ok &= ok;
            lines.push(format!("tag {x0}: {}", fan_summary(&fan)));
            dot.push_str(&fan.to_dot());
            system.insert(x0.clone(), fan);
        }
        let mut o = Outcome::new("fans", ctx.seed, &ctx.tol, &system)?;
        o.line(format!("fans at all {} tags, mode {mode}", basis.labels().len()));
        o.report.extend(lines);
        o.check("fan checks (cliques, maximality, cover)", all_ok);
        finish_dot(&mut o, dot, a)?;
        return Ok(o);
    }
    let x0 = if a.untagged {
        None
    } else {
        Some(input::tag_label(&basis, a.target.tag.as_deref())?)
    };
    let (fan, ok) = checked_fan(&basis, x0.as_ref(), mode, &ctx.tol)?;
    let mut o = Outcome::new("fans", ctx.seed, &ctx.tol, &fan)?;
    match &x0 {
        Some(x0) => o.line(format!("fan at tag {x0}, mode {mode}")),
        None => o.line(format!("untagged fan, mode {mode}")),
    }
    o.line(fan_summary(&fan));
    for (k, mass) in fan.masses().iter().enumerate() {
        o.line(format!("  M{k} {{{}}}", join_labels(mass)));
    }
    o.check("fan checks (cliques, maximality, cover)", ok);
    finish_dot(&mut o, fan.to_dot(), a)?;
    Ok(o)
}

fn finish_dot(o: &mut Outcome, dot: String, a: &FansArgs) -> CliResult<()> {
    if let Some(path) = &a.dot {
        write_file(path, &dot)?;
    }
    o.dot = Some(dot);
    Ok(())
}

fn compare(ctx: &Ctx, left: &std::path::Path, right: &std::path::Path, variant: &str) -> CliResult<Outcome> {
    let variant: InvariantVariant = variant.parse()?;
    let (a, b) = (input::basis(left)?, input::basis(right)?);
    let c = compare_ub(&a, &b, variant, &ctx.tol)?;
    let mut o = Outcome::new("compare", ctx.seed, &ctx.tol, &c)?;
    match &c.differing_component {
        Some(component) => o.line(format!("{} ({variant}): {component} differs", c.verdict)),
        None => o.line(format!("{} ({variant})", c.verdict)),
    }
    o.line(format!(
        "distinct fan invariants: {} vs {}",
        c.left_distinct_invariants, c.right_distinct_invariants
    ));
    if c.verdict == Verdict::Inequivalent {
        o.exit = EXIT_INEQUIVALENT;
    }
    Ok(o)
}

fn tag_and_fan(ctx: &Ctx, a: &TagArgs) -> CliResult<(Tag, Fan, bool)> {
    let basis = input::basis(&a.basis)?;
    let x0 = input::tag_label(&basis, a.tag.as_deref())?;
    let mode: CommutationMode = a.mode.parse()?;
    let (fan, ok) = checked_fan(&basis, Some(&x0), mode, &ctx.tol)?;
    Ok((tag_at_with(&basis, &x0, &ctx.tol)?, fan, ok))
}

fn mub(ctx: &Ctx, a: &TagArgs) -> CliResult<Outcome> {
    let (tag, fan, ok) = tag_and_fan(ctx, a)?;
    let chosen = find_partition(&fan)?
        .ok_or_else(|| Failure::invalid(format!("the fan at tag {} has no partition into disjoint MASSs", tag.x0())))?;
    let partition: Vec<Vec<Label>> = chosen.iter().map(|&i| fan.masses()[i].clone()).collect();
    let system = mub_from_partition(&tag, &partition, ctx.seed)?;
    let dev = system.unbiasedness_deviation();
    let mut o = Outcome::new("mub", ctx.seed, &ctx.tol, &system)?;
    o.line(format!("{} mutually unbiased bases in d={} from the fan at tag {}", system.len(), tag.d(), tag.x0()));
    for mass in &partition {
        o.line(format!("  {{{}}}", join_labels(mass)));
    }
    o.check("fan checks (cliques, maximality, cover)", ok);
    o.check(format!("unbiasedness (max deviation {})", sci(dev)), dev <= MUB_TOL);
    Ok(o)
}

fn povm_checks(o: &mut Outcome, p: &Povm, tol: &Tolerances) {
    let d = p.d();
    let (complete, rank) = is_info_complete(p);
    o.line(format!(
        "{} outcomes ({} pure + completion), {}: rank {rank}",
        p.len(),
        p.pure_count(),
        if complete { "complete" } else { "incomplete" }
    ));
    let sum = p.completeness_residual();
    o.check(format!("sum to identity (residual {})", sci(sum)), sum <= POVM_SUM_TOL);
    let min = p.min_eigenvalue();
    o.check(format!("positivity (least eigenvalue {})", sci(min)), min >= -tol.psd);
    o.check(format!("informational completeness (rank {rank} of {})", d * d), complete);
}

fn bounds_line(d: usize, cover: usize) -> String {
    let s = s_bound(d).map_or_else(|_| "n/a".to_string(), |s| s.to_string());
    format!("minimal cover: {cover} MASSes (s_bound {s}); refined bound 4+(d-2)·{cover} = {}", refined_bound(d, cover))
}

fn povm(ctx: &Ctx, a: &PovmArgs) -> CliResult<Outcome> {
    let (tag, fan, ok) = tag_and_fan(ctx, &a.target)?;
    let d = tag.d();
    match a.strategy {
        Strategy::Crude => {
            if a.hub.is_some() {
                return Err(Failure::invalid("--hub applies to --strategy refined only"));
            }
            let cover = minimal_cover(&fan)?;
            let p = crude_povm(&tag, &cover, ctx.seed)?;
            #[derive(Serialize)]
            struct Crude<'a> {
                cover: &'a fanweave::tomography::CoverSelection,
                povm: &'a fanweave::tomography::PurePovm,
            }
            let mut o = Outcome::new("povm", ctx.seed, &ctx.tol, Crude { cover: &cover, povm: &p })?;
            o.line(format!("crude POVM at tag {}, d={d}", tag.x0()));
            o.line(bounds_line(d, cover.len()));
            o.line(format!("scale c = {}", p.scale));
            o.check("fan checks (cliques, maximality, cover)", ok);
            povm_checks(&mut o, &p.povm, &ctx.tol);
            Ok(o)
        }
        Strategy::Refined => {
            let hub = input::label(a.hub.as_deref().ok_or_else(|| Failure::invalid("--strategy refined needs --hub"))?)?;
            let r = refined_povm(&tag, &fan, &hub, ctx.seed)?;
            let mut o = Outcome::new("povm", ctx.seed, &ctx.tol, &r)?;
            o.line(format!("refined POVM at tag {}, d={d}, hub {hub}", tag.x0()));
            o.line(bounds_line(d, r.cover_size));
            for g in &r.groups {
                o.line(format!(
                    "  hubs {} over {} MASSes, blocks {:?}, kept {:?}",
                    join_labels(&g.hubs),
                    g.masses.len(),
                    g.block_sizes,
                    g.kept
                ));
            }
            o.line(format!("scale c = {}", r.pure.scale));
            o.check("fan checks (cliques, maximality, cover)", ok);
            povm_checks(&mut o, &r.pure.povm, &ctx.tol);
            if let Some(bound) = r.bound {
                o.check(format!("outcome count meets refined bound {bound}"), r.pure.povm.len() == bound);
            }
            Ok(o)
        }
    }
}

fn ppt(ctx: &Ctx, a: &PptArgs) -> CliResult<Outcome> {
    let half = a.half_dim.unwrap_or(a.n);
    let c = build_ppt(a.n, half, ctx.seed, a.shift)?;
    let mut o = Outcome::new("ppt", ctx.seed, &ctx.tol, &c)?;
    o.line(format!("{n}×{n} blocks of size {}, dimension {}", 2 * half, c.matrix.dim(), n = a.n));
    o.line(format!("least positivity shift a0 = {:.6}, applied a = {:.6}", c.a0, c.shift_a));
    o.check(format!("positivity (λ_min {})", sci(c.lambda_min)), c.lambda_min >= -ctx.tol.psd);
    o.check(format!("positive partial transpose (λ_min_pt {})", sci(c.lambda_min_pt)), c.lambda_min_pt >= -ctx.tol.psd);
    o.check(format!("transpose identity (residual {})", sci(c.structural_residual)), c.structural_residual <= 1e-10);
    o.check(format!("block identity (residual {})", sci(c.cuet_residual)), c.cuet_residual <= 1e-12);
    Ok(o)
}

fn hadamard(ctx: &Ctx, a: &TagArgs) -> CliResult<Outcome> {
    let (tag, fan, ok) = tag_and_fan(ctx, a)?;
    let hf = hadamard_fan(&tag, &fan, ctx.seed)?;
    let mut o = Outcome::new("hadamard-fan", ctx.seed, &ctx.tol, &hf)?;
    o.line(format!("{} partial Hadamard matrices at tag {}, d={}", hf.entries.len(), tag.x0(), tag.d()));
    for e in &hf.entries {
        o.line(format!("  {{{}}}: {}×{} augmented, canonical {:?}", join_labels(&e.labels), e.augmented.rows(), e.augmented.cols(), e.canonical));
    }
    o.check("fan checks (cliques, maximality, cover)", ok);
    Ok(o)
}
