use std::io::{BufRead, Write};
use std::sync::Arc;

use serde_json::{json, Value};
use transfer_core::counts::closed_form_u64;
use transfer_core::json::{
    self, PairJson, PartitionJson, TransferJson, TreeJson, TriangulationJson, WireObject,
};
use transfer_core::{
    closed_form_count, density_ratios, enumerate_partitions, enumerate_trees, pair_to_tree,
    partition_of, transfer_of, tree_to_pair, tree_to_triangulation, triangulation_to_tree,
    FiniteLattice, PairKind, StackedTriangulation, SystemCatalog, TricoloredTree,
};

use crate::render::{hasse_dot, triangulation_svg};
use crate::{Cli, CliError, CliResult, Command, Format, KindArg, Objects, Target};

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Enumerate { objects, kind } => {
            cli.format("enumerate", &[Format::Json])?;
            enumerate(cli, *objects, *kind)
        }
        Command::Count { kind } => {
            let format = cli.format("count", &[Format::Csv, Format::Json])?;
            count(cli, *kind, format)
        }
        Command::Classify => {
            cli.format("classify", &[Format::Json])?;
            classify(cli)
        }
        Command::Convert { to } => {
            cli.format("convert", &[Format::Json])?;
            convert(cli, *to)
        }
        Command::Hasse { order, legend } => {
            cli.format("hasse", &[Format::Dot])?;
            let lattice = cli.lattice.require()?;
            let catalog = SystemCatalog::new(lattice);
            let poset = catalog.order_poset((*order).into())?;
            let mut out = cli.writer()?;
            out.write_all(hasse_dot(&format!("{order:?}").to_lowercase(), &poset).as_bytes())?;
            out.flush()?;
            if let Some(path) = legend {
                let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
                for (i, r) in catalog.systems().iter().enumerate() {
                    writeln!(file, "{}", json!({ "index": i, "pairs": r.pairs() }))?;
                }
                file.flush()?;
            }
            Ok(())
        }
        Command::Triangulate => {
            cli.format("triangulate", &[Format::Svg])?;
            triangulate(cli)
        }
        Command::Report { max_n } => {
            let format = cli.format("report", &[Format::Csv, Format::Json])?;
            report(cli, *max_n, format)
        }
    }
}

fn chain_length(lattice: &FiniteLattice) -> CliResult<usize> {
    lattice.chain_length().ok_or(CliError::Core(transfer_core::Error::NotAChain))
}

fn enumerate(cli: &Cli, objects: Objects, kind: KindArg) -> CliResult<()> {
    let lattice = cli.lattice.require()?;
    let mut out = cli.writer()?;
    match objects {
        Objects::Transfer => {
            for r in SystemCatalog::new(lattice).systems() {
                writeln!(out, "{}", json::to_line(&TransferJson::from_system(r)))?;
            }
        }
        Objects::Pairs => {
            let kind = match kind {
                KindArg::All => PairKind::Premodel,
                k => k.kinds()[0],
            };
            for p in SystemCatalog::new(lattice).structures(kind) {
                writeln!(out, "{}", json::to_line(&PairJson::from_pair(&p)))?;
            }
        }
        Objects::Trees => {
            for t in enumerate_trees(chain_length(&lattice)? + 1) {
                writeln!(out, "{}", json::to_line(&TreeJson::from_tree(&t)))?;
            }
        }
        Objects::Partitions => {
            for p in enumerate_partitions(chain_length(&lattice)?) {
                writeln!(out, "{}", json::to_line(&PartitionJson::from_partition(&p)))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn count(cli: &Cli, kind: KindArg, format: Format) -> CliResult<()> {
    let lattice = cli.lattice.require()?;
    let n = lattice.chain_length();
    let catalog = SystemCatalog::new(Arc::clone(&lattice));
    let records = catalog.classify_all();
    let mut out = cli.writer()?;
    if format == Format::Csv {
        writeln!(out, "kind,enumerated,closed_form,verdict")?;
    }
    let mut mismatches = 0;
    for k in kind.kinds() {
        let found = catalog.count(&records, k);
        let expected = n.map(|n| closed_form_count(n as u64, k));
        let verdict = match &expected {
            None => "UNCHECKED",
            Some(e) if *e == found.into() => "MATCH",
            Some(_) => {
                mismatches += 1;
                "MISMATCH"
            }
        };
        let expected = expected.map_or("-".to_string(), |e| e.to_string());
        match format {
            Format::Json => writeln!(
                out,
                "{}",
                json!({ "kind": k.name(), "enumerated": found, "closed_form": expected, "verdict": verdict })
            )?,
            _ => writeln!(out, "{},{found},{expected},{verdict}", k.name())?,
        }
    }
    out.flush()?;
    if mismatches > 0 {
        return Err(CliError::Mismatch(mismatches));
    }
    Ok(())
}

/// Non-blank input lines, numbered from 1.
fn input_lines(cli: &Cli) -> CliResult<Vec<(usize, String)>> {
    let mut lines = Vec::new();
    for (i, line) in cli.reader()?.lines().enumerate() {
        let line = line?;
        if !line.trim().is_empty() {
            lines.push((i + 1, line));
        }
    }
    Ok(lines)
}

fn at_line<T>(line: usize, r: transfer_core::Result<T>) -> CliResult<T> {
    r.map_err(|e| match e {
        transfer_core::Error::Invariant(_) => CliError::Core(e),
        e => CliError::Usage(format!("line {line}: {e}")),
    })
}

fn classify(cli: &Cli) -> CliResult<()> {
    let fallback = cli.lattice.resolve()?;
    let mut out = cli.writer()?;
    for (line, text) in input_lines(cli)? {
        let pair: PairJson = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("line {line}: not a pair: {e}")))?;
        let p = at_line(line, pair.build(fallback.as_ref()))?;
        let f = p.kind_flags();
        writeln!(
            out,
            "{{\"premodel\":true,\"cc\":{},\"model\":{},\"compatible\":{}}}",
            f.cc, f.model, f.compatible
        )?;
    }
    out.flush()?;
    Ok(())
}

fn convert_one(
    obj: WireObject,
    to: Target,
    fallback: Option<&Arc<FiniteLattice>>,
) -> transfer_core::Result<Option<String>> {
    let tree_out = |t: &TricoloredTree| -> transfer_core::Result<String> {
        Ok(match to {
            Target::Tree => json::to_line(&TreeJson::from_tree(&t.canonical())),
            Target::Pair => json::to_line(&PairJson::from_pair(&tree_to_pair(t)?)),
            _ => json::to_line(&TriangulationJson::from_triangulation(&tree_to_triangulation(t))),
        })
    };
    Ok(Some(match (obj, to) {
        (WireObject::Transfer(r), Target::Transfer) => json::to_line(&TransferJson::from_system(&r.build()?)),
        (WireObject::Transfer(r), Target::Partition) => {
            json::to_line(&PartitionJson::from_partition(&partition_of(&r.build()?)?))
        }
        (WireObject::Partition(p), Target::Partition) => json::to_line(&PartitionJson::from_partition(&p.build()?)),
        (WireObject::Partition(p), Target::Transfer) => {
            json::to_line(&TransferJson::from_system(&transfer_of(&p.build()?)?))
        }
        (WireObject::Pair(p), Target::Pair) => json::to_line(&PairJson::from_pair(&p.build(fallback)?)),
        (WireObject::Pair(p), Target::Tree | Target::Triangulation) => tree_out(&pair_to_tree(&p.build(fallback)?)?)?,
        (WireObject::Tree(t), Target::Tree | Target::Pair | Target::Triangulation) => tree_out(&t.build()?)?,
        (WireObject::Triangulation(s), Target::Triangulation) => {
            json::to_line(&TriangulationJson::from_triangulation(&s.build()?.canonical()?))
        }
        (WireObject::Triangulation(s), Target::Tree | Target::Pair) => {
            tree_out(&triangulation_to_tree(&s.build()?)?)?
        }
        _ => return Ok(None),
    }))
}

fn convert(cli: &Cli, to: Target) -> CliResult<()> {
    let fallback = cli.lattice.resolve()?;
    let mut out = cli.writer()?;
    for (line, text) in input_lines(cli)? {
        let obj = at_line(line, json::parse(&text))?;
        let kind = obj.kind();
        match at_line(line, convert_one(obj, to, fallback.as_ref()))? {
            Some(s) => writeln!(out, "{s}")?,
            None => {
                return Err(CliError::Usage(format!(
                    "line {line}: cannot convert a {kind} to a {}",
                    format!("{to:?}").to_lowercase()
                )))
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn triangulate(cli: &Cli) -> CliResult<()> {
    let fallback = cli.lattice.resolve()?;
    let lines = input_lines(cli)?;
    let [(line, text)] = lines.as_slice() else {
        return Err(CliError::Usage(format!("triangulate takes exactly one object, got {}", lines.len())));
    };
    let line = *line;
    let s: StackedTriangulation = match at_line(line, json::parse(text))? {
        WireObject::Triangulation(s) => at_line(line, s.build())?,
        WireObject::Tree(t) => tree_to_triangulation(&at_line(line, t.build())?),
        WireObject::Pair(p) => {
            let tree = at_line(line, p.build(fallback.as_ref()).and_then(|p| pair_to_tree(&p)))?;
            tree_to_triangulation(&tree)
        }
        other => {
            return Err(CliError::Usage(format!("line {line}: cannot draw a {}", other.kind())));
        }
    };
    let mut out = cli.writer()?;
    out.write_all(triangulation_svg(&s).as_bytes())?;
    out.flush()?;
    Ok(())
}

fn count_value(n: u64, kind: PairKind) -> Value {
    match closed_form_u64(n, kind) {
        Some(c) => Value::from(c),
        None => Value::from(closed_form_count(n, kind).to_string()),
    }
}

fn report(cli: &Cli, max_n: u64, format: Format) -> CliResult<()> {
    let mut out = cli.writer()?;
    if format == Format::Csv {
        writeln!(out, "n,premodel,cc,model,compatible,model_over_cc,cc_over_premodel")?;
    }
    for n in 0..=max_n {
        let (q_over_c, c_over_p) = density_ratios(n);
        match format {
            Format::Json => {
                let mut row = json!({ "n": n });
                for k in PairKind::ALL {
                    row[k.name()] = count_value(n, k);
                }
                row["model_over_cc"] = Value::from(q_over_c.to_string());
                row["cc_over_premodel"] = Value::from(c_over_p.to_string());
                writeln!(out, "{row}")?;
            }
            _ => {
                write!(out, "{n}")?;
                for k in PairKind::ALL {
                    write!(out, ",{}", closed_form_count(n, k))?;
                }
                writeln!(out, ",{q_over_c},{c_over_p}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}
