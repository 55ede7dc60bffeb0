use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use holocount::format::{parse, InstanceFile};
use holocount::holant::{
    assemble, brute_force_contraction_capped, brute_force_sat_capped, evaluate, CONTRACTION_CAP,
    SAT_CAP,
};
use holocount::planar::{
    build_curve, curve_order, validate_order_capped, EdgeOrder, Instance, OrderKind, Orientation,
    Validity, VALIDATE_CAP,
};
use holocount::rational::{format_rational, int};
use holocount::{forests, Error, Rational};

#[derive(Parser)]
#[command(
    name = "holocount",
    version,
    about = "Exact planar counting via one Pfaffian"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count an instance as αβ·Pf(z̃ + y).
    Count {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        order: OrderArgs,
        /// Also print the combined matrix.
        #[arg(long)]
        emit_matrix: bool,
        /// Cross-check against brute-force oracles.
        #[arg(long, value_enum)]
        oracle: Option<OracleKind>,
        #[command(flatten)]
        caps: Caps,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the brute-force oracles and compare them with the count.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "both")]
        oracle: OracleKind,
        #[command(flatten)]
        caps: Caps,
        #[arg(long)]
        json: bool,
    },
    /// Print z̃ + y in the chosen edge order.
    Matrix {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Certify an edge order by brute force.
    Validate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        order: OrderArgs,
        /// Largest edge count to certify.
        #[arg(long, default_value_t = VALIDATE_CAP)]
        validate_cap: usize,
    },
    /// Print the curve's crossing sequence and the canonical curve order.
    Curve {
        #[command(flatten)]
        input: Input,
    },
    /// Count rooted spanning forests of an fvertex/fedge graph.
    Forests {
        #[command(flatten)]
        input: Input,
        /// Also enumerate forests directly and compare.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args)]
struct Input {
    /// Instance file.
    file: PathBuf,
}

#[derive(Args)]
struct OrderArgs {
    /// Where the edge order comes from.
    #[arg(long, value_enum, default_value = "auto")]
    order_source: OrderSource,
    /// Edge name at which to cut the curve.
    #[arg(long)]
    start_edge: Option<String>,
    /// Read the curve in the opposite direction.
    #[arg(long)]
    reverse: bool,
    /// Largest edge count for certifying a file order.
    #[arg(long, default_value_t = VALIDATE_CAP)]
    order_cap: usize,
}

#[derive(Args)]
struct Caps {
    #[arg(long, default_value_t = CONTRACTION_CAP)]
    contraction_cap: usize,
    #[arg(long, default_value_t = SAT_CAP)]
    sat_cap: usize,
    /// Split oracle enumeration across threads.
    #[arg(long)]
    parallel: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderSource {
    Auto,
    File,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Contraction,
    Sat,
    Both,
}

/// Failure categories, each with its own exit status.
enum Failure {
    Disagreement(String),
    Input(String),
    Unrealizable(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotRealizable { .. } | Error::ParityMismatch { .. } | Error::OddEdgeCount(_) => {
                Failure::Unrealizable(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

fn read(input: &Input) -> Result<holocount::format::Parsed, Failure> {
    let text = std::fs::read_to_string(&input.file)
        .map_err(|e| Failure::Input(format!("{}: {e}", input.file.display())))?;
    Ok(parse(&text)?)
}

fn read_instance(input: &Input) -> Result<InstanceFile, Failure> {
    Ok(read(input)?.into_instance()?)
}

fn choose_order(
    file: &InstanceFile,
    args: &OrderArgs,
    certify: bool,
) -> Result<EdgeOrder, Failure> {
    let inst = &file.instance;
    match args.order_source {
        OrderSource::Auto => {
            let start = match &args.start_edge {
                Some(name) => Some(
                    inst.edge_by_name(name)
                        .ok_or_else(|| Failure::Input(format!("unknown edge `{name}`")))?,
                ),
                None => None,
            };
            let orientation = if args.reverse {
                Orientation::Reverse
            } else {
                Orientation::Forward
            };
            Ok(curve_order(inst, start, orientation)?)
        }
        OrderSource::File => {
            if args.start_edge.is_some() || args.reverse {
                return Err(Failure::Input(
                    "--start-edge and --reverse apply to curve orders, not --order-source file"
                        .into(),
                ));
            }
            let seq = file
                .order
                .clone()
                .ok_or_else(|| Failure::Input("the file has no `order` directive".into()))?;
            let order = EdgeOrder::new(inst, seq, OrderKind::User)?;
            if certify {
                if let Validity::Counterexample { side, set, pairing } =
                    validate_order_capped(inst, &order, args.order_cap)?
                {
                    return Err(Failure::Input(format!(
                        "the file order is not valid: {side} pairing {} on edges {} breaks the sign condition",
                        pairing_names(inst, &pairing),
                        names(inst, &set)
                    )));
                }
            }
            Ok(order)
        }
    }
}

fn names(inst: &Instance, edges: &[usize]) -> String {
    edges
        .iter()
        .map(|&e| inst.edges()[e].name.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn pairing_names(inst: &Instance, p: &holocount::planar::Pairing) -> String {
    p.pairs()
        .iter()
        .map(|&(a, b)| format!("({},{})", inst.edges()[a].name, inst.edges()[b].name))
        .collect()
}

struct Oracles {
    contraction: Option<Rational>,
    sat: Option<u64>,
}

impl Oracles {
    fn run(inst: &Instance, kind: OracleKind, caps: &Caps) -> Result<Self, Failure> {
        let contraction = match kind {
            OracleKind::Contraction | OracleKind::Both => Some(brute_force_contraction_capped(
                inst,
                caps.contraction_cap,
                caps.parallel,
            )?),
            OracleKind::Sat => None,
        };
        let sat = match kind {
            OracleKind::Sat | OracleKind::Both => {
                Some(brute_force_sat_capped(inst, caps.sat_cap, caps.parallel)?)
            }
            OracleKind::Contraction => None,
        };
        Ok(Oracles { contraction, sat })
    }

    fn values(&self) -> Vec<Rational> {
        self.contraction
            .iter()
            .cloned()
            .chain(self.sat.map(|s| int(s as i64)))
            .collect()
    }

    fn print(&self) {
        if let Some(c) = &self.contraction {
            println!("contraction = {}", format_rational(c));
        }
        if let Some(s) = self.sat {
            println!("sat = {s}");
        }
    }

    fn json(&self, v: &mut serde_json::Value) {
        if let Some(c) = &self.contraction {
            v["contraction"] = json!(format_rational(c));
        }
        if let Some(s) = self.sat {
            v["sat"] = json!(s.to_string());
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Count {
            input,
            order,
            emit_matrix,
            oracle,
            caps,
            json,
        } => {
            let file = read_instance(&input)?;
            let inst = &file.instance;
            let edge_order = choose_order(&file, &order, true)?;
            let asm = assemble(inst, &file.basis, &edge_order)?;
            let report = evaluate(inst, &asm, emit_matrix);
            let oracles = oracle.map(|k| Oracles::run(inst, k, &caps)).transpose()?;
            let agree = oracles
                .as_ref()
                .map(|o| o.values().iter().all(|v| *v == report.count));
            if json {
                let mut v = report.to_json();
                if let Some(o) = &oracles {
                    o.json(&mut v);
                    v["agree"] = json!(agree);
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                );
            } else {
                println!("count = {}", format_rational(&report.count));
                println!("alpha = {}", format_rational(&report.alpha));
                println!("beta = {}", format_rational(&report.beta));
                println!("pfaffian = {}", format_rational(&report.pfaffian));
                println!("order = {}", report.order.join(" "));
                if let Some(m) = &report.matrix {
                    println!("{m}");
                }
                if let Some(o) = &oracles {
                    o.print();
                    println!("agree = {}", if agree == Some(true) { "yes" } else { "no" });
                }
            }
            match agree {
                Some(false) => Err(Failure::Disagreement(
                    "oracles disagree with the count".into(),
                )),
                _ => Ok(()),
            }
        }
        Command::Oracle {
            input,
            oracle,
            caps,
            json,
        } => {
            let file = read_instance(&input)?;
            let inst = &file.instance;
            let oracles = Oracles::run(inst, oracle, &caps)?;
            let counted = curve_order(inst, None, Orientation::Forward)
                .map_err(Failure::from)
                .and_then(|o| Ok(evaluate(inst, &assemble(inst, &file.basis, &o)?, false)));
            let mut values = oracles.values();
            let count = match &counted {
                Ok(r) => {
                    values.push(r.count.clone());
                    Some(r.count.clone())
                }
                Err(_) => None,
            };
            let agree = values.windows(2).all(|w| w[0] == w[1]);
            if json {
                let mut v = json!({ "schema": holocount::holant::REPORT_SCHEMA, "agree": agree });
                oracles.json(&mut v);
                if let Some(c) = &count {
                    v["count"] = json!(format_rational(c));
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                );
            } else {
                oracles.print();
                match &counted {
                    Ok(r) => println!("count = {}", format_rational(&r.count)),
                    Err(
                        Failure::Unrealizable(m) | Failure::Input(m) | Failure::Disagreement(m),
                    ) => {
                        println!("count unavailable: {m}")
                    }
                }
                println!("agree = {}", if agree { "yes" } else { "no" });
            }
            if agree {
                Ok(())
            } else {
                Err(Failure::Disagreement("oracle values disagree".into()))
            }
        }
        Command::Matrix { input, order } => {
            let file = read_instance(&input)?;
            let edge_order = choose_order(&file, &order, true)?;
            let asm = assemble(&file.instance, &file.basis, &edge_order)?;
            println!("{}", asm.combined());
            Ok(())
        }
        Command::Validate {
            input,
            order,
            validate_cap,
        } => {
            let file = read_instance(&input)?;
            let inst = &file.instance;
            let edge_order = choose_order(&file, &order, false)?;
            match validate_order_capped(inst, &edge_order, validate_cap)? {
                Validity::Valid => {
                    println!("valid: {}", edge_order.display_names(inst));
                    Ok(())
                }
                Validity::Counterexample { side, set, pairing } => {
                    println!(
                        "invalid: {side} pairing {} on edges {}",
                        pairing_names(inst, &pairing),
                        names(inst, &set)
                    );
                    Err(Failure::Disagreement("order is not valid".into()))
                }
            }
        }
        Command::Curve { input } => {
            let file = read_instance(&input)?;
            let inst = &file.instance;
            let curve = build_curve(inst);
            println!("crossings = {}", names(inst, curve.crossings()));
            println!("merges = {}", curve.merges());
            let order = curve_order(inst, None, Orientation::Forward)?;
            println!("order = {}", order.display_names(inst));
            Ok(())
        }
        Command::Forests { input, check } => {
            let g = read(&input)?.into_graph()?;
            let n = forests::count_rooted_spanning_forests(&g);
            println!("forests = {n}");
            if check {
                let slow = forests::brute_force_forests(&g)?;
                println!("enumerated = {slow}");
                if slow != n {
                    return Err(Failure::Disagreement("enumeration disagrees".into()));
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagreement(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Unrealizable(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
