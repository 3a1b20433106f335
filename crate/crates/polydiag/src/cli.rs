//! Command-line surface: one thin binary over the library, emitting
//! text, JSON or LaTeX.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::ainfty::{tensor_operations, Variance};
use crate::diagonal::diagonal_top;
use crate::matrices::enumerate_configurations;
use crate::partition::OrderedPartition;
use crate::permcalc::{faceword_factorizations, quadratic_condition};
use crate::render::{
    self, assoc_terms_json, assoc_terms_latex, assoc_terms_text, chain_json, chain_latex,
    chain_text, matrix_text, tensor_chain_json, tensor_chain_latex, tensor_chain_text,
    tensor_ops_json, tensor_ops_latex, tensor_ops_text,
};
use crate::trees::{
    assoc_diagonal_direct, assoc_diagonal_projected, canonical_word, fibers, multi_diagonal,
    multi_rep, partition_to_faceword, partition_tree, render_parenthesization, AssocTerm,
    Projection,
};
use crate::verify::run_all;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Projection,
    Direct,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarianceArg {
    Alg,
    Coalg,
}

/// Exact diagonals on permutahedra, multiplihedra and associahedra.
#[derive(Parser, Debug)]
#[command(name = "polydiag", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<String>,
    /// Size guard against super-exponential enumeration
    #[arg(long, global = true, default_value_t = 8)]
    cap: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diagonal of the top cell of P_N
    PermDiagonal { n: u32 },
    /// Diagonal of e^N on the associahedron K_{N+2}
    AssocDiagonal {
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
    },
    /// Diagonal of the multiplihedron J_{N+1} (classes of P_{N+1})
    MultiDiagonal { n: u32 },
    /// Boundary of a face, e.g. `boundary "12|3"`
    Boundary { partition: String },
    /// Configuration matrices over {1..N}
    Configs {
        n: u32,
        /// Print only the count
        #[arg(long)]
        count: bool,
    },
    /// Face word and parenthesization of a partition
    Faceword { partition: String },
    /// Fibers of the Tonks projection on P_N
    TonksClasses { n: u32 },
    /// The two coface factorizations of a partition
    Relations { partition: String },
    /// Quadratic-composition bracket of a pair of pairs
    Qcheck { outer: String, inner: String },
    /// Tensor-product operations of one arity
    TensorOps {
        n: u32,
        #[arg(long, value_enum)]
        variance: VarianceArg,
    },
    /// Run the verification suites
    Verify {
        #[arg(long, default_value_t = 5)]
        max_n: u32,
    },
}

fn parse_partition(text: &str) -> Result<OrderedPartition, String> {
    OrderedPartition::parse(text).map_err(|e| format!("bad partition {text:?}: {e}"))
}

fn two_block(text: &str) -> Result<(Vec<u32>, Vec<u32>), String> {
    let u = parse_partition(text)?;
    if u.num_blocks() != 2 {
        return Err(format!("{text:?} must have exactly two blocks"));
    }
    Ok((u.blocks()[0].clone(), u.blocks()[1].clone()))
}

fn guard(n: u32, cap: u32) -> Result<(), String> {
    if n > cap {
        Err(format!(
            "n = {n} exceeds the cap {cap}; raise it with --cap if you mean it"
        ))
    } else {
        Ok(())
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn run_command(cli: &Cli) -> Result<(String, bool), String> {
    let mut ok = true;
    let text = match &cli.command {
        Command::PermDiagonal { n } => {
            guard(*n, cli.cap)?;
            if *n == 0 {
                return Err("P_0 is empty; n starts at 1".into());
            }
            let d = diagonal_top(n - 1);
            match cli.format {
                Format::Text => tensor_chain_text(&d),
                Format::Json => json(&tensor_chain_json(&d)),
                Format::Latex => tensor_chain_latex(&d) + "\n",
            }
        }
        Command::AssocDiagonal { n, method } => {
            guard(n + 2, cli.cap)?;
            let direct = assoc_diagonal_direct(*n);
            let render_direct = |terms: &[AssocTerm]| match cli.format {
                Format::Text => assoc_terms_text(terms),
                Format::Json => json(&assoc_terms_json(terms)),
                Format::Latex => assoc_terms_latex(terms) + "\n",
            };
            match method {
                Method::Direct => render_direct(&direct),
                Method::Projection => {
                    let proj = assoc_diagonal_projected(*n);
                    let terms: Vec<AssocTerm> = proj
                        .iter()
                        .map(|((l, r), &c)| AssocTerm {
                            coeff: c,
                            left: canonical_word(l),
                            right: canonical_word(r),
                        })
                        .collect();
                    render_direct(&terms)
                }
                Method::Both => {
                    let agreed =
                        crate::trees::assoc_direct_as_tensor(*n) == assoc_diagonal_projected(*n);
                    ok &= agreed;
                    let mut s = render_direct(&direct);
                    let _ = writeln!(
                        s,
                        "{}",
                        if agreed {
                            "OK: projection and direct routes agree"
                        } else {
                            "MISMATCH: projection and direct routes differ"
                        }
                    );
                    s
                }
            }
        }
        Command::MultiDiagonal { n } => {
            guard(n + 1, cli.cap)?;
            let d = multi_diagonal(*n);
            match cli.format {
                Format::Text => {
                    let mut s = String::new();
                    for ((l, r), &c) in &d {
                        let _ = writeln!(
                            s,
                            "{} {} (x) {}",
                            if c < 0 { '-' } else { '+' },
                            multi_rep(n + 1, l),
                            multi_rep(n + 1, r),
                        );
                    }
                    s
                }
                Format::Json => {
                    let terms: Vec<render::TensorTermJson> = d
                        .iter()
                        .map(|((l, r), &c)| render::TensorTermJson {
                            coef: c,
                            left: multi_rep(n + 1, l),
                            right: multi_rep(n + 1, r),
                        })
                        .collect();
                    json(&terms)
                }
                Format::Latex => {
                    let parts: Vec<String> = d
                        .iter()
                        .map(|((l, r), &c)| {
                            format!(
                                "{} {} \\otimes {}",
                                if c < 0 { '-' } else { '+' },
                                multi_rep(n + 1, l),
                                multi_rep(n + 1, r)
                            )
                        })
                        .collect();
                    parts.join(" ") + "\n"
                }
            }
        }
        Command::Boundary { partition } => {
            let u = parse_partition(partition)?;
            let b = u.boundary();
            match cli.format {
                Format::Text => chain_text(&b) + "\n",
                Format::Json => json(&chain_json(&b)),
                Format::Latex => chain_latex(&b) + "\n",
            }
        }
        Command::Configs { n, count } => {
            guard(*n, cli.cap)?;
            if *n == 0 {
                return Err("configuration matrices need n >= 1".into());
            }
            let all = enumerate_configurations(n - 1);
            if *count {
                format!("{}\n", all.len())
            } else {
                match cli.format {
                    Format::Text => {
                        let mut s = String::new();
                        for (m, _, sign) in &all {
                            let _ = writeln!(
                                s,
                                "csgn {}  c {}  r {}",
                                if *sign < 0 { "-1" } else { "+1" },
                                m.column_face(),
                                m.row_face()
                            );
                            s.push_str(&matrix_text(m));
                        }
                        s
                    }
                    Format::Json => {
                        #[derive(serde::Serialize)]
                        struct Entry {
                            csgn: i64,
                            matrix: crate::matrices::OrderedMatrix,
                        }
                        let entries: Vec<Entry> = all
                            .iter()
                            .map(|(m, _, s)| Entry {
                                csgn: *s,
                                matrix: m.clone(),
                            })
                            .collect();
                        json(&entries)
                    }
                    Format::Latex => {
                        return Err("configs has no latex form; use text or json".into())
                    }
                }
            }
        }
        Command::Faceword { partition } => {
            let u = parse_partition(partition)?;
            let w = partition_to_faceword(&u);
            match cli.format {
                Format::Text => format!(
                    "word {}\nbrackets {}\ntree {}\n",
                    w,
                    render_parenthesization(&u),
                    partition_tree(&u)
                ),
                Format::Json => json(&w),
                Format::Latex => {
                    let mut s = String::new();
                    if w.batches.is_empty() {
                        s.push('1');
                    }
                    for batch in w.batches.iter().rev() {
                        s.push_str("d_{");
                        for &(i, l) in batch {
                            let _ = write!(s, "({i},{l})");
                        }
                        s.push('}');
                    }
                    s.push('\n');
                    s
                }
            }
        }
        Command::TonksClasses { n } => {
            guard(*n, cli.cap)?;
            let classes = fibers(*n, Projection::Assoc);
            match cli.format {
                Format::Text => {
                    let mut s = String::new();
                    for class in &classes {
                        let members: Vec<String> =
                            class.iter().map(|u| u.to_string()).collect();
                        let _ = writeln!(
                            s,
                            "[{}] -> {}",
                            members.join(", "),
                            partition_tree(&class[0])
                        );
                    }
                    s
                }
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct ClassJson {
                        image: String,
                        members: Vec<OrderedPartition>,
                    }
                    let entries: Vec<ClassJson> = classes
                        .iter()
                        .map(|class| ClassJson {
                            image: partition_tree(&class[0]).to_string(),
                            members: class.clone(),
                        })
                        .collect();
                    json(&entries)
                }
                Format::Latex => {
                    return Err("tonks-classes has no latex form; use text or json".into())
                }
            }
        }
        Command::Relations { partition } => {
            let u = parse_partition(partition)?;
            if u.num_blocks() < 2 {
                return Err("relations needs at least two blocks".into());
            }
            let (w1, w2) =
                faceword_factorizations(&u).map_err(|e| format!("factorization failed: {e}"))?;
            let show = |word: &[(Vec<u32>, Vec<u32>)]| -> String {
                word.iter()
                    .rev()
                    .map(|(a, b)| {
                        let pair = OrderedPartition::new(vec![a.clone(), b.clone()])
                            .expect("valid two-block partition");
                        format!("d[{pair}]")
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            format!("{}\n{}\n", show(&w1), show(&w2))
        }
        Command::Qcheck { outer, inner } => {
            let (a, b) = two_block(outer)?;
            let (c, d) = two_block(inner)?;
            match quadratic_condition(&a, &b, &c, &d).map_err(|e| e.to_string())? {
                Some(bracket) => format!("{bracket}\n"),
                None => "degenerate\n".to_string(),
            }
        }
        Command::TensorOps { n, variance } => {
            guard(*n, cli.cap)?;
            if *n == 0 {
                return Err("tensor operations start at n = 1".into());
            }
            let variance = match variance {
                VarianceArg::Alg => Variance::Algebra,
                VarianceArg::Coalg => Variance::Coalgebra,
            };
            let terms = tensor_operations(*n, variance);
            match cli.format {
                Format::Text => tensor_ops_text(&terms),
                Format::Json => json(&tensor_ops_json(&terms)),
                Format::Latex => tensor_ops_latex(&terms) + "\n",
            }
        }
        Command::Verify { max_n } => {
            guard(*max_n, cli.cap)?;
            let mut s = String::new();
            for result in run_all(*max_n) {
                ok &= result.ok;
                let _ = writeln!(
                    s,
                    "{} {} ({})",
                    if result.ok { "pass" } else { "FAIL" },
                    result.name,
                    result.detail
                );
            }
            let _ = writeln!(s, "{}", if ok { "all checks passed" } else { "FAILURES" });
            s
        }
    };
    Ok((text, ok))
}

/// Entry point used by the thin binary.
pub fn main_with(args: Vec<String>) -> ExitCode {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own convention: display errors/help, usage exits 2
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run_command(&cli) {
        Ok((text, ok)) => {
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("cannot write {path}: {e}");
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
