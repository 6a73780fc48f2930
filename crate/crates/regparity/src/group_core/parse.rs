//! Group input: disjoint-cycle generator lists and named presets.

use super::{presets, GroupError, Perm, PermGroup};

/// Parses one generator per line in disjoint-cycle notation over 0-based
/// points, e.g. `(0 1)(2 3)`. Blank lines and `#` comments are skipped. The
/// degree is one more than the largest point mentioned.
pub fn parse_generators(text: &str) -> Result<PermGroup, GroupError> {
    let mut lines = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        lines.push(parse_cycles(body, ln + 1)?);
    }
    let degree = lines.iter().flatten().flatten().copied().max().map_or(1, |m| m + 1);
    let gens = lines
        .iter()
        .map(|cycles| Perm::from_cycles(degree, cycles))
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::new(degree, gens)
}

fn parse_cycles(line: &str, ln: usize) -> Result<Vec<Vec<usize>>, GroupError> {
    let err = |col: usize, message: &str| GroupError::Parse { line: ln, column: col, message: message.into() };
    let mut cycles = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut number = String::new();
    let mut number_col = 0;
    let flush = |number: &mut String, current: &mut Option<Vec<usize>>, col: usize| -> Result<(), GroupError> {
        if number.is_empty() {
            return Ok(());
        }
        let v: usize = number.parse().map_err(|_| err(col, "point out of range"))?;
        current.as_mut().ok_or_else(|| err(col, "point outside a cycle"))?.push(v);
        number.clear();
        Ok(())
    };
    for (i, ch) in line.char_indices() {
        let col = i + 1;
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(err(col, "nested '('"));
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush(&mut number, &mut current, number_col)?;
                let c = current.take().ok_or_else(|| err(col, "unmatched ')'"))?;
                if c.len() > 1 {
                    cycles.push(c);
                }
            }
            '0'..='9' => {
                if number.is_empty() {
                    number_col = col;
                }
                number.push(ch);
            }
            ' ' | '\t' | ',' => flush(&mut number, &mut current, number_col)?,
            _ => return Err(err(col, &format!("unexpected character '{ch}'"))),
        }
    }
    if current.is_some() {
        return Err(err(line.len() + 1, "unterminated cycle"));
    }
    Ok(cycles)
}

/// Resolves `S3`, `A5`, `S<n>`, `A<n>`, `C<n>`, `D<2n>`, `D2n:<n>` and
/// `Borel:<p>`.
pub fn preset(name: &str) -> Result<PermGroup, GroupError> {
    let bad = || GroupError::UnknownPreset(name.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if let Some(n) = name.strip_prefix("D2n:") {
        return presets::dihedral(num(n)?);
    }
    if let Some(p) = name.strip_prefix("Borel:") {
        return presets::borel(num(p)? as u64);
    }
    let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
    match head {
        "S" => presets::symmetric(num(tail)?),
        "A" => presets::alternating(num(tail)?),
        "C" => presets::cyclic(num(tail)?),
        "D" => match num(tail)? {
            m if m % 2 == 0 => presets::dihedral(m / 2),
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cycle_lists() {
        let g = parse_generators("(0 1 2 3 4)\n# comment\n(0 1 2)\n").unwrap();
        assert_eq!(g.degree(), 5);
        assert_eq!(g.order(), 60);
        let g = parse_generators("(0 1)(2 3)\n").unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn reports_positions() {
        match parse_generators("(0 1)\n(0 x)\n") {
            Err(GroupError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_generators("(0 1"), Err(GroupError::Parse { line: 1, .. })));
        assert!(parse_generators("(0 1)(1 2)").is_err());
    }

    #[test]
    fn presets_resolve() {
        assert_eq!(preset("S3").unwrap().order(), 6);
        assert_eq!(preset("A5").unwrap().order(), 60);
        assert_eq!(preset("D2n:5").unwrap().order(), 10);
        assert_eq!(preset("Borel:7").unwrap().order(), 42);
        assert_eq!(preset("C5").unwrap().order(), 5);
        assert_eq!(preset("D10").unwrap().order(), 10);
        assert!(preset("D9").is_err());
        assert!(preset("Q8").is_err());
    }
}
