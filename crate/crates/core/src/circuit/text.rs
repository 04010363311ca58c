use std::fmt::Write as _;

use super::{Circuit, Gate, QubitRegister, RegisterKind};
use crate::{Error, Result};

/// Serializes `qubits K`, then `reg name offset width kind` lines, then one gate per line.
pub fn write_circuit(c: &Circuit) -> String {
    let mut out = String::with_capacity(16 * c.len() + 64);
    writeln!(out, "qubits {}", c.width()).unwrap();
    for r in c.registers() {
        writeln!(
            out,
            "reg {} {} {} {}",
            r.name,
            r.offset,
            r.width,
            r.kind.as_str()
        )
        .unwrap();
    }
    for g in c.gates() {
        out.push_str(g.mnemonic());
        for q in g.qubits() {
            write!(out, " {q}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_circuit(src: &str) -> Result<Circuit> {
    let mut c = Circuit::new();
    let mut declared_width = None;
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line, msg };
        let mut tok = text.split_whitespace();
        let head = tok.next().unwrap();
        let rest: Vec<&str> = tok.collect();
        match head {
            "qubits" => {
                let [k] = rest[..] else {
                    return Err(err("expected `qubits K`".into()));
                };
                declared_width = Some(
                    k.parse::<u32>()
                        .map_err(|_| err(format!("bad width `{k}`")))?,
                );
            }
            "reg" => {
                let [name, offset, width, kind] = rest[..] else {
                    return Err(err("expected `reg name offset width kind`".into()));
                };
                let reg = QubitRegister {
                    name: name.to_string(),
                    offset: offset
                        .parse()
                        .map_err(|_| err(format!("bad offset `{offset}`")))?,
                    width: width
                        .parse()
                        .map_err(|_| err(format!("bad width `{width}`")))?,
                    kind: RegisterKind::parse(kind)
                        .ok_or_else(|| err(format!("unknown register kind `{kind}`")))?,
                };
                c.insert_register(reg).map_err(|e| err(e.to_string()))?;
            }
            _ => {
                let qs: Vec<u32> = rest
                    .iter()
                    .map(|t| t.parse().map_err(|_| err(format!("bad qubit index `{t}`"))))
                    .collect::<Result<_>>()?;
                let g = gate_from(head, &qs).ok_or_else(|| err(format!("bad gate `{text}`")))?;
                let Some(w) = declared_width else {
                    return Err(err("gate before `qubits` header".into()));
                };
                if c.width() < w {
                    c.width = w;
                }
                c.try_push(g).map_err(|e| err(e.to_string()))?;
            }
        }
    }
    let w = declared_width.ok_or_else(|| Error::input("missing `qubits` header"))?;
    if c.width() > w {
        return Err(Error::input(format!(
            "registers extend past the declared {w} qubits"
        )));
    }
    c.width = w;
    Ok(c)
}

fn gate_from(mnemonic: &str, q: &[u32]) -> Option<Gate> {
    Some(match (mnemonic, q) {
        ("x", &[a]) => Gate::X(a),
        ("h", &[a]) => Gate::H(a),
        ("z", &[a]) => Gate::Z(a),
        ("s", &[a]) => Gate::S(a),
        ("sdg", &[a]) => Gate::Sdg(a),
        ("t", &[a]) => Gate::T(a),
        ("tdg", &[a]) => Gate::Tdg(a),
        ("cx", &[a, b]) => Gate::Cx(a, b),
        ("cz", &[a, b]) => Gate::Cz(a, b),
        ("ccx", &[a, b, t]) => Gate::Ccx(a, b, t),
        ("mcx", [cs @ .., t]) if cs.len() >= 3 => Gate::Mcx(cs.into(), *t),
        _ => return None,
    })
}
