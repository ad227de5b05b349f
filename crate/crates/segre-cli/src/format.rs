//! The line-oriented state file format and small CLI-side parsers.
//!
//! ```text
//! # optional comments
//! dims N1 N2 … Nm
//! amp i1 i2 … im RE IM
//! ```
//!
//! The header must precede every `amp` line; unlisted amplitudes are zero.
//! Written files list amplitudes in row-major offset order with zeros
//! omitted and floats in shortest-round-trip scientific notation, so
//! `parse(write(ψ))` reproduces `ψ` bit-exactly.

use std::fmt::Write as _;

use segre::{flat_offset, index_at, Complex64, MultiIndex, StateTensor};

/// CLI-level failure split by exit code: input problems exit 1, domain
/// problems exit 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Domain(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Domain(msg) => write!(f, "{msg}"),
        }
    }
}

pub fn domain(err: segre::Error) -> CliError {
    CliError::Domain(err.to_string())
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {msg}"))
}

pub fn parse_state_file(text: &str) -> Result<StateTensor, CliError> {
    let mut dims: Option<Vec<usize>> = None;
    let mut amps: Vec<Complex64> = Vec::new();
    let mut seen: Vec<bool> = Vec::new();
    for (number, raw) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("dims") => {
                if dims.is_some() {
                    return Err(parse_err(number, "duplicate dims header"));
                }
                let parsed: Vec<usize> = fields
                    .map(|token| {
                        token
                            .parse::<usize>()
                            .map_err(|_| parse_err(number, format!("bad dimension `{token}`")))
                    })
                    .collect::<Result<_, _>>()?;
                // validate the shape the same way the library does
                StateTensor::new(&parsed, &[]).map_err(|err| parse_err(number, err))?;
                let total: usize = parsed.iter().product();
                amps = vec![Complex64::new(0.0, 0.0); total];
                seen = vec![false; total];
                dims = Some(parsed);
            }
            Some("amp") => {
                let dims = dims
                    .as_ref()
                    .ok_or_else(|| parse_err(number, "amp line before dims header"))?;
                let tokens: Vec<&str> = fields.collect();
                if tokens.len() != dims.len() + 2 {
                    return Err(parse_err(
                        number,
                        format!("expected {} indices plus RE IM", dims.len()),
                    ));
                }
                let components: Vec<usize> = tokens[..dims.len()]
                    .iter()
                    .map(|token| {
                        token
                            .parse::<usize>()
                            .map_err(|_| parse_err(number, format!("bad index `{token}`")))
                    })
                    .collect::<Result<_, _>>()?;
                let index = MultiIndex::new(components);
                let offset = flat_offset(dims, &index).map_err(|err| parse_err(number, err))?;
                if seen[offset] {
                    return Err(parse_err(
                        number,
                        format!("duplicate amplitude for {index}"),
                    ));
                }
                let re = parse_float(tokens[dims.len()], number)?;
                let im = parse_float(tokens[dims.len() + 1], number)?;
                seen[offset] = true;
                amps[offset] = Complex64::new(re, im);
            }
            Some(other) => {
                return Err(parse_err(number, format!("unknown directive `{other}`")));
            }
            None => unreachable!("blank lines are skipped"),
        }
    }
    let dims = dims.ok_or_else(|| CliError::Input("state file: missing dims header".into()))?;
    StateTensor::from_amps(&dims, amps).map_err(|err| CliError::Input(err.to_string()))
}

fn parse_float(token: &str, line: usize) -> Result<f64, CliError> {
    let value: f64 = token
        .parse()
        .map_err(|_| parse_err(line, format!("bad number `{token}`")))?;
    if !value.is_finite() {
        return Err(parse_err(line, format!("non-finite amplitude `{token}`")));
    }
    Ok(value)
}

pub fn write_state_file(psi: &StateTensor) -> String {
    let mut out = String::from("dims");
    for n in psi.dims() {
        let _ = write!(out, " {n}");
    }
    out.push('\n');
    for (offset, amp) in psi.amps().iter().enumerate() {
        // keep negative zeros so the round trip is bitwise faithful
        if amp.re.to_bits() == 0 && amp.im.to_bits() == 0 {
            continue;
        }
        let index = index_at(psi.dims(), offset).expect("offset in range");
        out.push_str("amp");
        for c in index.components() {
            let _ = write!(out, " {c}");
        }
        let _ = writeln!(out, " {:e} {:e}", amp.re, amp.im);
    }
    out
}

/// Parses a comma-separated dimension list such as `2,3,2`.
pub fn parse_dims(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(|token| {
            token
                .trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad dims spec `{spec}`")))
        })
        .collect()
}

/// Parses a comma-separated position list such as `1,3`.
pub fn parse_positions(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(|token| {
            token
                .trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad class spec `{spec}`")))
        })
        .collect()
}
