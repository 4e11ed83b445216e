//! Plain-text code files.
//!
//! ```text
//! cdc q=<q> n=<n> k=<k> d=<d> M=<count>
//!
//! <row of k*n decimal entries, space separated>
//! ... k rows per codeword, blocks separated by blank lines
//! ```
//!
//! Generators are written in rref. The field is reconstructed from `q`
//! alone: modulus selection is deterministic, so a prime power pins the
//! field exactly.

use std::io::{BufRead, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{prime_power_decompose, FieldSpec};
use crate::matrix::Matrix;
use crate::subspace::{ConstantDimensionCode, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeFileHeader {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub count: usize,
}

/// Write a code; requires a claimed minimum distance.
pub fn write_code<W: Write>(mut out: W, code: &ConstantDimensionCode) -> Result<()> {
    let d = code.claimed_min_distance().ok_or_else(|| {
        Error::invalid("cannot write a code file without a claimed minimum distance")
    })?;
    writeln!(
        out,
        "cdc q={} n={} k={} d={} M={}",
        code.spec().q(),
        code.ambient_dim(),
        code.dim(),
        d,
        code.len()
    )?;
    for word in code.words() {
        writeln!(out)?;
        out.write_all(word.generator().to_text().as_bytes())?;
    }
    Ok(())
}

fn parse_field<T: std::str::FromStr>(token: &str, key: &str, line: usize) -> Result<T> {
    let value = token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected {key}=<value>, found {token:?}")))?;
    value
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid value in {token:?}")))
}

/// Read a code file without rejecting duplicate codewords, preserving file
/// order. Each block is canonicalized to its rref generator.
pub fn read_code_raw<R: BufRead>(
    input: R,
) -> Result<(CodeFileHeader, Arc<FieldSpec>, Vec<Subspace>)> {
    let mut lines = input.lines().enumerate();
    let (_, header_line) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty file"))?;
    let header_line = header_line?;
    let tokens: Vec<&str> = header_line.split_whitespace().collect();
    if tokens.len() != 6 || tokens[0] != "cdc" {
        return Err(Error::parse(
            1,
            "header must be \"cdc q=<q> n=<n> k=<k> d=<d> M=<count>\"",
        ));
    }
    let header = CodeFileHeader {
        q: parse_field(tokens[1], "q", 1)?,
        n: parse_field(tokens[2], "n", 1)?,
        k: parse_field(tokens[3], "k", 1)?,
        d: parse_field(tokens[4], "d", 1)?,
        count: parse_field(tokens[5], "M", 1)?,
    };
    let (p, e) = prime_power_decompose(header.q)
        .map_err(|_| Error::parse(1, format!("q={} is not a prime power", header.q)))?;
    let spec = Arc::new(FieldSpec::new(p, e).map_err(|err| Error::parse(1, err.to_string()))?);
    if header.k > header.n {
        return Err(Error::parse(1, "k exceeds n"));
    }

    let mut words = Vec::with_capacity(header.count);
    let mut block: Vec<Vec<u64>> = Vec::with_capacity(header.k);
    let mut block_start = 0usize;
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            if !block.is_empty() {
                return Err(Error::parse(
                    lineno,
                    format!(
                        "codeword block starting at line {block_start} has {} rows, expected {}",
                        block.len(),
                        header.k
                    ),
                ));
            }
            continue;
        }
        if block.is_empty() {
            block_start = lineno;
        }
        let row: Vec<u64> = trimmed
            .split(' ')
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| Error::parse(lineno, format!("invalid entry {tok:?}")))
            })
            .collect::<Result<_>>()?;
        if row.len() != header.n {
            return Err(Error::parse(
                lineno,
                format!("row has {} entries, expected {}", row.len(), header.n),
            ));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= header.q) {
            return Err(Error::parse(
                lineno,
                format!("entry {bad} is not below q={}", header.q),
            ));
        }
        block.push(row);
        if block.len() == header.k {
            let m = Matrix::from_rows(Arc::clone(&spec), &block)
                .expect("rows validated against header");
            let word = Subspace::from_matrix(&m).map_err(|_| {
                Error::parse(
                    block_start,
                    "codeword block is rank-deficient".to_string(),
                )
            })?;
            words.push(word);
            block.clear();
        }
    }
    if !block.is_empty() {
        return Err(Error::parse(
            block_start,
            format!(
                "trailing codeword block has {} rows, expected {}",
                block.len(),
                header.k
            ),
        ));
    }
    if words.len() != header.count {
        return Err(Error::parse(
            1,
            format!("header claims M={}, file has {} codewords", header.count, words.len()),
        ));
    }
    Ok((header, spec, words))
}

/// Read a code file strictly: duplicates are an error and the header's `d`
/// becomes the claimed minimum distance.
pub fn read_code<R: BufRead>(input: R) -> Result<ConstantDimensionCode> {
    let (header, spec, words) = read_code_raw(input)?;
    ConstantDimensionCode::new(spec, header.n, header.k, words, Some(header.d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::lifted_mrd;
    use crate::rankmetric::DEFAULT_ENUM_CAP;

    #[test]
    fn roundtrip() {
        let spec = Arc::new(FieldSpec::new(2, 1).unwrap());
        let code = lifted_mrd(&spec, 6, 3, 4, DEFAULT_ENUM_CAP).unwrap();
        let mut buf = Vec::new();
        write_code(&mut buf, &code).unwrap();
        let parsed = read_code(buf.as_slice()).unwrap();
        assert_eq!(parsed.len(), code.len());
        assert_eq!(parsed.claimed_min_distance(), Some(4));
        assert_eq!(parsed.word_set(), code.word_set());
        // writing again is byte-identical
        let mut buf2 = Vec::new();
        write_code(&mut buf2, &parsed).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn header_errors_carry_line_numbers() {
        let err = read_code(&b"bogus"[..]).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = read_code(&b"cdc q=6 n=4 k=2 d=2 M=0"[..]).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn body_errors_carry_line_numbers() {
        let text = "cdc q=2 n=3 k=2 d=2 M=1\n\n1 0 1\n0 1 x\n";
        let err = read_code(text.as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected error {other:?}"),
        }

        let short_row = "cdc q=2 n=3 k=2 d=2 M=1\n\n1 0\n0 1 0\n";
        assert!(matches!(
            read_code(short_row.as_bytes()),
            Err(Error::Parse { line: 3, .. })
        ));

        let rank_deficient = "cdc q=2 n=3 k=2 d=2 M=1\n\n1 0 1\n1 0 1\n";
        assert!(matches!(
            read_code(rank_deficient.as_bytes()),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn count_mismatch_detected() {
        let text = "cdc q=2 n=3 k=1 d=2 M=2\n\n1 0 1\n";
        assert!(matches!(
            read_code(text.as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn raw_reader_keeps_duplicates() {
        let text = "cdc q=2 n=3 k=1 d=2 M=2\n\n1 0 1\n\n1 0 1\n";
        let (header, _, words) = read_code_raw(text.as_bytes()).unwrap();
        assert_eq!(header.count, 2);
        assert_eq!(words[0], words[1]);
        assert!(read_code(text.as_bytes()).is_err());
    }

    #[test]
    fn non_rref_blocks_are_canonicalized() {
        let text = "cdc q=2 n=3 k=2 d=2 M=1\n\n1 1 1\n0 1 0\n";
        let (_, _, words) = read_code_raw(text.as_bytes()).unwrap();
        assert_eq!(words[0].generator().entries(), &[1, 0, 1, 0, 1, 0]);
    }
}
