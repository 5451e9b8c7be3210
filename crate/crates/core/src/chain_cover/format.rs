//! Text format for cached chain partitions.
//!
//! ```text
//! polarorder-chains v1 n=<n> chains=<K>
//! <chain 1, decimal indices separated by single spaces>
//! …
//! <chain K>
//! ```
//!
//! ASCII, one trailing newline, no other whitespace.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::partition::ChainPartition;
use crate::error::{Error, Result};

const MAGIC: &str = "polarorder-chains";
const VERSION: &str = "v1";

pub fn to_text(p: &ChainPartition) -> String {
    let mut out = format!("{MAGIC} {VERSION} n={} chains={}\n", p.levels(), p.len());
    for chain in p.chains() {
        let mut first = true;
        for i in chain {
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&i.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn save_partition(p: &ChainPartition, path: impl AsRef<Path>) -> Result<()> {
    p.verify().map_err(|d| Error::invariant(d.to_string()))?;
    let mut f = fs::File::create(path)?;
    f.write_all(to_text(p).as_bytes())?;
    Ok(())
}

pub fn load_partition(path: impl AsRef<Path>) -> Result<ChainPartition> {
    parse_partition(&fs::read_to_string(path)?)
}

/// [`load_partition`] without the structural check, for diagnosing files.
pub fn load_partition_unverified(path: impl AsRef<Path>) -> Result<ChainPartition> {
    parse_partition_unverified(&fs::read_to_string(path)?)
}

fn parse_decimal(tok: &str, line: usize, what: &str) -> Result<u32> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(line, format!("{what}: expected a decimal integer, got {tok:?}")));
    }
    tok.parse()
        .map_err(|_| Error::parse(line, format!("{what}: {tok:?} does not fit")))
}

pub fn parse_partition(text: &str) -> Result<ChainPartition> {
    let p = parse_partition_unverified(text)?;
    p.verify().map_err(|d| Error::invariant(d.to_string()))?;
    Ok(p)
}

/// Syntax checks only; the chains may overlap or be out of order.
pub fn parse_partition_unverified(text: &str) -> Result<ChainPartition> {
    if !text.is_ascii() {
        return Err(Error::parse(1, "file is not ASCII"));
    }
    let Some(body) = text.strip_suffix('\n') else {
        return Err(Error::parse(text.lines().count().max(1), "missing trailing newline"));
    };
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or_default();
    let fields: Vec<&str> = header.split(' ').collect();
    let (n, declared) = match fields.as_slice() {
        [magic, version, n, k] if *magic == MAGIC && *version == VERSION => {
            let n = n
                .strip_prefix("n=")
                .ok_or_else(|| Error::parse(1, "expected n=<n>"))?;
            let k = k
                .strip_prefix("chains=")
                .ok_or_else(|| Error::parse(1, "expected chains=<K>"))?;
            (parse_decimal(n, 1, "n")?, parse_decimal(k, 1, "chains")? as usize)
        }
        _ => {
            return Err(Error::parse(
                1,
                format!("expected header `{MAGIC} {VERSION} n=<n> chains=<K>`"),
            ))
        }
    };
    if n == 0 || n > crate::index_poset::MAX_LEVELS {
        return Err(Error::parse(1, format!("unsupported n = {n}")));
    }

    let mut chains = Vec::with_capacity(declared);
    for (offset, line) in lines.enumerate() {
        let lineno = offset + 2;
        if line.is_empty() {
            return Err(Error::parse(lineno, "empty chain line"));
        }
        let chain = line
            .split(' ')
            .map(|tok| parse_decimal(tok, lineno, "index"))
            .collect::<Result<Vec<u32>>>()?;
        chains.push(chain);
    }
    if chains.len() != declared {
        return Err(Error::parse(
            chains.len() + 2,
            format!("header declares {declared} chains, found {}", chains.len()),
        ));
    }

    Ok(ChainPartition::from_chains(n, chains))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> ChainPartition {
        ChainPartition::from_chains(
            4,
            vec![vec![0, 1, 2, 4, 8, 9, 10, 12], vec![3, 5, 6, 7, 11, 13, 14, 15]],
        )
    }

    #[test]
    fn exact_bytes() {
        assert_eq!(
            to_text(&example()),
            "polarorder-chains v1 n=4 chains=2\n0 1 2 4 8 9 10 12\n3 5 6 7 11 13 14 15\n"
        );
    }

    #[test]
    fn unverified_keeps_bad_order() {
        let text = "polarorder-chains v1 n=2 chains=1\n0 2 1 3\n";
        assert!(matches!(parse_partition(text), Err(Error::Invariant(_))));
        let p = parse_partition_unverified(text).unwrap();
        assert!(!p.is_valid());
        assert!(parse_partition_unverified("polarorder-chains v1 n=2 chains=1\n0 x\n").is_err());
    }

    #[test]
    fn round_trip() {
        let p = example();
        assert_eq!(parse_partition(&to_text(&p)).unwrap(), p);
    }

    #[test]
    fn duplicate_index_is_named() {
        let text = "polarorder-chains v1 n=2 chains=2\n0 1 2 3\n2\n";
        let err = parse_partition(text).unwrap_err();
        assert!(matches!(err, Error::Invariant(_)));
        assert!(err.to_string().contains("index 2"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let cases = [
            ("polarorder-chains v1 n=2 chains=1\n0 1 2 3", 2),
            ("polarorder-chains v2 n=2 chains=1\n0 1 2 3\n", 1),
            ("polarorder-chains v1 n=2 chains=1\n0 1  2 3\n", 2),
            ("polarorder-chains v1 n=2 chains=1\n0 1 2 3 \n", 2),
            ("polarorder-chains v1 n=2 chains=2\n0 1\n2 x\n", 3),
            ("polarorder-chains v1 n=2 chains=2\n0 1 2 3\n", 3),
            ("polarorder-chains v1 n=2 chains=1\n\n", 2),
        ];
        for (text, line) in cases {
            match parse_partition(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn order_violation_is_invariant_error() {
        let text = "polarorder-chains v1 n=2 chains=1\n0 2 1 3\n";
        assert!(matches!(parse_partition(text), Err(Error::Invariant(_))));
    }
}
