use std::path::{Path, PathBuf};

use hipkernels::io::{
    collect, distribute, random_permutation, read_index_vector, read_matrix_market, write_matrix_market,
};
use hipkernels::metrics::{load_imbalance, PhaseMetrics};
use hipkernels::ops::{hip_assign, hip_assign_perm, hip_extract, hip_perm, DistMatrix, DistVector, OpOutput};
use hipkernels::{Error, ProcGrid};

use crate::args::{AssignArgs, AssignPermArgs, BenchArgs, Command, ExtractArgs, ImbalanceArgs, PermuteArgs, Run};
use crate::metrics_csv::{self, MetricsRow};

#[derive(Debug)]
pub enum Failure {
    /// Bad combination of arguments; exit code 2.
    Usage(String),
    /// Anything going wrong while running; exit code 1.
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Run(format!("writing metrics: {e}"))
    }
}

type Result<T> = std::result::Result<T, Failure>;

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Permute(a) => permute(a),
        Command::Extract(a) => extract(a),
        Command::Assign(a) => assign(a),
        Command::AssignPerm(a) => assign_perm(a),
        Command::Imbalance(a) => imbalance(a),
        Command::Bench(a) => bench(a),
    }
}

fn with_path(path: &Path, e: Error) -> Failure {
    Failure::Run(format!("{}: {e}", path.display()))
}

fn load(path: &Path, grid: ProcGrid) -> Result<DistMatrix> {
    let coo = read_matrix_market(path).map_err(|e| with_path(path, e))?;
    log::info!(
        "{}: {}x{}, {} nonzeros",
        path.display(),
        coo.nrows(),
        coo.ncols(),
        coo.nnz()
    );
    Ok(distribute(&coo, grid)?)
}

fn index_file(path: &Path, bound: usize, grid: ProcGrid) -> Result<DistVector> {
    let v = read_index_vector(path, bound).map_err(|e| with_path(path, e))?;
    Ok(DistVector::from_global(grid, &v))
}

/// A permutation from `file` if given, otherwise generated from `seed`.
fn permutation(
    file: Option<&PathBuf>,
    seed: Option<u64>,
    len: usize,
    grid: ProcGrid,
    flag: &str,
) -> Result<DistVector> {
    match (file, seed) {
        (Some(path), _) => index_file(path, len, grid),
        (None, Some(seed)) => Ok(DistVector::from_global(grid, &random_permutation(len, seed))),
        (None, None) => Err(Failure::Usage(format!("--{flag} needs a file or --seed"))),
    }
}

fn imbalance_or_none(dm: &DistMatrix) -> Option<f64> {
    match load_imbalance(dm) {
        Ok(v) => Some(v),
        Err(Error::EmptyMatrix) => None,
        Err(e) => unreachable!("load_imbalance only fails on empty input: {e}"),
    }
}

/// Writes the result and metrics row for one operation.
fn finish(op: &str, run: &Run, seed: Option<u64>, input: &DistMatrix, out: &OpOutput) -> Result<()> {
    let mut m: PhaseMetrics = out.report.phases();
    m.imbalance_before = imbalance_or_none(input);
    m.imbalance_after = imbalance_or_none(&out.matrix);
    log::info!(
        "{op}: {} triples exchanged, gather {:.6}s local {:.6}s exchange {:.6}s build {:.6}s add {:.6}s",
        m.triples_exchanged(),
        m.gather_s,
        m.local_s,
        m.exchange_s,
        m.build_s,
        m.add_s
    );
    if let Some(path) = &run.output {
        write_matrix_market(&collect(&out.matrix)?, path).map_err(|e| with_path(path, e))?;
    }
    if let Some(path) = &run.metrics {
        metrics_csv::append(
            path,
            &MetricsRow::new(op, &run.matrix, run.procs, run.threads, seed, &m),
        )?;
    }
    Ok(())
}

fn permute(args: PermuteArgs) -> Result<()> {
    let grid = ProcGrid::new(args.run.procs)?;
    if args.seed.is_none() && (args.pvec.is_none() || args.qvec.is_none()) {
        return Err(Failure::Usage("permute needs --pvec and --qvec, or --seed".into()));
    }
    let a = load(&args.run.matrix, grid)?;
    let pvec = permutation(args.pvec.as_ref(), args.seed, a.nrows(), grid, "pvec")?;
    let qvec = permutation(
        args.qvec.as_ref(),
        args.seed.map(|s| s.wrapping_add(1)),
        a.ncols(),
        grid,
        "qvec",
    )?;
    let out = hip_perm(&a, &pvec, &qvec, args.run.threads)?;
    finish("permute", &args.run, args.seed, &a, &out)
}

fn extract(args: ExtractArgs) -> Result<()> {
    let grid = ProcGrid::new(args.run.procs)?;
    let a = load(&args.run.matrix, grid)?;
    let pvec = index_file(&args.pvec, a.nrows(), grid)?;
    let qvec = index_file(&args.qvec, a.ncols(), grid)?;
    let out = hip_extract(&a, &pvec, &qvec, args.run.threads)?;
    finish("extract", &args.run, None, &a, &out)
}

struct AssignInputs {
    a: DistMatrix,
    b: DistMatrix,
    pvec: DistVector,
    qvec: DistVector,
}

fn assign_inputs(args: &AssignArgs, grid: ProcGrid) -> Result<AssignInputs> {
    let a = load(&args.run.matrix, grid)?;
    let b = load(&args.submatrix, grid)?;
    let pvec = index_file(&args.pvec, a.nrows(), grid)?;
    let qvec = index_file(&args.qvec, a.ncols(), grid)?;
    Ok(AssignInputs { a, b, pvec, qvec })
}

fn assign(args: AssignArgs) -> Result<()> {
    let grid = ProcGrid::new(args.run.procs)?;
    let x = assign_inputs(&args, grid)?;
    let out = hip_assign(&x.a, &x.b, &x.pvec, &x.qvec, args.addop, args.run.threads)?;
    finish("assign", &args.run, None, &x.a, &out)
}

fn assign_perm(args: AssignPermArgs) -> Result<()> {
    let run = &args.assign.run;
    let grid = ProcGrid::new(run.procs)?;
    if args.seed.is_none() && (args.rperm.is_none() || args.cperm.is_none()) {
        return Err(Failure::Usage(
            "assign-perm needs --rperm and --cperm, or --seed".into(),
        ));
    }
    let x = assign_inputs(&args.assign, grid)?;
    let rperm = permutation(args.rperm.as_ref(), args.seed, x.a.nrows(), grid, "rperm")?;
    let cperm = permutation(
        args.cperm.as_ref(),
        args.seed.map(|s| s.wrapping_add(1)),
        x.a.ncols(),
        grid,
        "cperm",
    )?;
    let out = hip_assign_perm(
        &x.a,
        &x.b,
        &x.pvec,
        &x.qvec,
        &rperm,
        &cperm,
        args.assign.addop,
        run.threads,
    )?;
    finish("assign-perm", run, args.seed, &x.a, &out)
}

fn imbalance(args: ImbalanceArgs) -> Result<()> {
    let grid = ProcGrid::new(args.procs)?;
    let a = load(&args.matrix, grid)?;
    println!("{:?}", load_imbalance(&a)?);
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let run = &args.run;
    let grid = ProcGrid::new(run.procs)?;
    let a = load(&run.matrix, grid)?;
    println!("run,seed,gather_s,local_s,exchange_s,build_s,triples_exchanged");
    for k in 0..args.repeat {
        let seed = args.seed.wrapping_add(2 * k as u64);
        let pvec = DistVector::from_global(grid, &random_permutation(a.nrows(), seed));
        let qvec = DistVector::from_global(grid, &random_permutation(a.ncols(), seed.wrapping_add(1)));
        let out = hip_perm(&a, &pvec, &qvec, run.threads)?;
        let m = out.report.phases();
        println!(
            "{k},{seed},{:.6},{:.6},{:.6},{:.6},{}",
            m.gather_s,
            m.local_s,
            m.exchange_s,
            m.build_s,
            m.triples_exchanged()
        );
        finish("bench", run, Some(seed), &a, &out)?;
    }
    Ok(())
}
