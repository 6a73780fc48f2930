//! Curve local-data files.
//!
//! A file is TOML with an optional top-level `name` and one `[[place]]`
//! table per place:
//!
//! ```toml
//! name = "X1(11)"
//!
//! [[place]]
//! place = "inf"
//! kind = "real"
//!
//! [[place]]
//! place = "11"
//! kind = "finite"
//! p = 11
//! q = 11              # optional, defaults to p
//! type = "split_mult" # good | split_mult | nonsplit_mult | additive_pot_mult | additive_pot_good
//! ord_delta = 1       # optional, defaults to 0
//! c = 1               # optional, defaults to the value forced by the type
//! omega_disc = 0      # optional, defaults to 0
//! w_override = -1     # optional
//! ```
//!
//! Unknown keys are rejected. Finite places not listed have good reduction.
//!
//! A tower file adds the family, the prime and one `[[galois]]` table per
//! listed place giving generators of inertia and a Frobenius element as
//! affine maps of `F_p`:
//!
//! ```toml
//! family = "dihedral"   # borel | s3 | dihedral
//! p = 5
//!
//! [[place]]
//! place = "19"
//! kind = "finite"
//! p = 19
//! type = "split_mult"
//! ord_delta = 1
//!
//! [[galois]]
//! place = "19"
//! inertia = ["x+1"]
//! frobenius = "-x"
//! pot_mult_split = false  # optional
//! ```

use serde::Deserialize;
use toml::Spanned;

use super::base_change::AdditiveHint;
use super::data::{LocalCurveData, PlaceKind, ReductionType, Sign, Tamagawa};
use super::galois::{Affine, LocalGalois};
use super::scenario::Scenario;
use super::LocalError;
use crate::arith::is_prime_u64;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: Option<String>,
    #[serde(default)]
    place: Vec<Spanned<RawPlace>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlace {
    place: String,
    kind: String,
    p: Option<u64>,
    q: Option<u64>,
    #[serde(rename = "type")]
    reduction: Option<String>,
    ord_delta: Option<u32>,
    c: Option<u64>,
    omega_disc: Option<i64>,
    w_override: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTower {
    name: Option<String>,
    family: String,
    p: Option<u64>,
    #[serde(default)]
    place: Vec<Spanned<RawPlace>>,
    #[serde(default)]
    galois: Vec<Spanned<RawGalois>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGalois {
    place: String,
    #[serde(default)]
    inertia: Vec<String>,
    frobenius: Option<String>,
    #[serde(default)]
    pot_mult_split: bool,
}

/// The parsed contents of a curve file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFile {
    pub name: Option<String>,
    pub places: Vec<LocalCurveData>,
}

impl CurveFile {
    #[must_use]
    pub fn infinite_places(&self) -> Vec<&LocalCurveData> {
        self.places.iter().filter(|d| !d.is_finite()).collect()
    }

    /// Data at the prime `l`, good reduction when not listed.
    #[must_use]
    pub fn at_prime(&self, l: u64) -> LocalCurveData {
        self.places
            .iter()
            .find(|d| d.is_finite() && d.residue_char == l)
            .cloned()
            .unwrap_or_else(|| LocalCurveData::finite(&l.to_string(), l, ReductionType::Good, 0))
    }

    /// Residue characteristics of the listed finite places.
    #[must_use]
    pub fn listed_primes(&self) -> Vec<u64> {
        let mut ls: Vec<u64> = self.places.iter().filter(|d| d.is_finite()).map(|d| d.residue_char).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, column)
}

fn parse_error(text: &str, offset: usize, message: String) -> LocalError {
    let (line, column) = line_col(text, offset);
    LocalError::Parse { line, column, message }
}

pub fn parse_curve_file(text: &str) -> Result<CurveFile, LocalError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        parse_error(text, offset, e.message().to_string())
    })?;
    let places = raw
        .place
        .into_iter()
        .map(|spanned| {
            let offset = spanned.span().start;
            to_data(spanned.into_inner()).map_err(|m| parse_error(text, offset, m))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CurveFile { name: raw.name, places })
}

fn to_data(r: RawPlace) -> Result<LocalCurveData, String> {
    let kind = match r.kind.as_str() {
        "finite" => PlaceKind::Finite,
        "real" => PlaceKind::Real,
        "complex" => PlaceKind::Complex,
        other => return Err(format!("unknown kind '{other}'")),
    };
    let w_override = r
        .w_override
        .map(|w| Sign::from_i64(w).ok_or_else(|| format!("w_override must be 1 or -1, got {w}")))
        .transpose()?;
    let mut d = if kind == PlaceKind::Finite {
        let p = r.p.ok_or("finite place needs p")?;
        let q = r.q.unwrap_or(p);
        let ty = r.reduction.as_deref().ok_or("finite place needs type")?;
        let reduction = ReductionType::parse(ty).ok_or_else(|| format!("unknown type '{ty}'"))?;
        let mut d = LocalCurveData::finite(&r.place, q, reduction, r.ord_delta.unwrap_or(0));
        if d.residue_char != p {
            return Err(format!("q = {q} is not a power of p = {p}"));
        }
        if let Some(c) = r.c {
            d.tamagawa = Tamagawa::Exact(c);
        }
        d.omega_disc = r.omega_disc.unwrap_or(0);
        d
    } else {
        if r.p.is_some() || r.q.is_some() || r.reduction.is_some() || r.ord_delta.is_some() || r.c.is_some() || r.omega_disc.is_some() {
            return Err("infinite places take only place, kind and w_override".into());
        }
        if kind == PlaceKind::Real {
            LocalCurveData::real(&r.place)
        } else {
            LocalCurveData::complex(&r.place)
        }
    };
    d.w_override = w_override;
    d.validate().map_err(|e| e.to_string())?;
    Ok(d)
}

/// The ambient group of a tower file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerFamily {
    Borel,
    S3,
    Dihedral,
}

impl TowerFamily {
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::Borel => "borel",
            Self::S3 => "s3",
            Self::Dihedral => "dihedral",
        }
    }

    #[must_use]
    pub fn parse(s: &str) -> Option<Self> {
        [Self::Borel, Self::S3, Self::Dihedral].into_iter().find(|f| f.name() == s)
    }
}

/// The parsed contents of a tower file: every listed place with its local
/// Galois data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerFile {
    pub name: Option<String>,
    pub family: TowerFamily,
    pub p: u64,
    pub places: Vec<Scenario>,
}

pub fn parse_tower_file(text: &str) -> Result<TowerFile, LocalError> {
    let raw: RawTower = toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        parse_error(text, offset, e.message().to_string())
    })?;
    let family = TowerFamily::parse(&raw.family)
        .ok_or_else(|| parse_error(text, 0, format!("unknown family '{}'", raw.family)))?;
    let p = match (family, raw.p) {
        (TowerFamily::S3, None | Some(3)) => 3,
        (TowerFamily::S3, Some(p)) => return Err(parse_error(text, 0, format!("family s3 has p = 3, got {p}"))),
        (_, Some(p)) if p > 2 && is_prime_u64(p) => p,
        (_, Some(p)) => return Err(parse_error(text, 0, format!("p must be an odd prime, got {p}"))),
        (_, None) => return Err(parse_error(text, 0, "tower file needs p".into())),
    };
    let mut data = Vec::new();
    for spanned in raw.place {
        let offset = spanned.span().start;
        let d = to_data(spanned.into_inner()).map_err(|m| parse_error(text, offset, m))?;
        if data.iter().any(|(x, _): &(LocalCurveData, usize)| x.label == d.label) {
            return Err(parse_error(text, offset, format!("place '{}' listed twice", d.label)));
        }
        data.push((d, offset));
    }
    let mut places = Vec::new();
    let mut used = vec![false; data.len()];
    for spanned in raw.galois {
        let offset = spanned.span().start;
        let g = spanned.into_inner();
        let at = |m: String| parse_error(text, offset, m);
        let idx = data
            .iter()
            .position(|(d, _)| d.label == g.place)
            .ok_or_else(|| at(format!("galois entry for unlisted place '{}'", g.place)))?;
        if std::mem::replace(&mut used[idx], true) {
            return Err(at(format!("place '{}' has two galois entries", g.place)));
        }
        let read = |s: &str| Affine::parse(s, p).map_err(|e| at(e.to_string()));
        let inertia = g.inertia.iter().map(|s| read(s)).collect::<Result<Vec<_>, _>>()?;
        let frob = g.frobenius.as_deref().map_or(Ok(Affine::identity()), read)?;
        let galois = match family {
            TowerFamily::Dihedral => LocalGalois::dihedral(p, &inertia, frob),
            _ => LocalGalois::new(p, &inertia, frob),
        }
        .map_err(|e| at(e.to_string()))?;
        places.push(Scenario { galois, place: data[idx].0.clone(), hint: AdditiveHint { pot_mult_split: g.pot_mult_split } });
    }
    if let Some(i) = used.iter().position(|u| !u) {
        let (d, offset) = &data[i];
        return Err(parse_error(text, *offset, format!("place '{}' has no galois entry", d.label)));
    }
    Ok(TowerFile { name: raw.name, family, p, places })
}

/// Writes a tower file that parses back to the same data.
#[must_use]
pub fn write_tower_file(t: &TowerFile) -> String {
    let mut out = String::new();
    if let Some(name) = &t.name {
        out.push_str(&format!("name = {}\n", toml_string(name)));
    }
    out.push_str(&format!("family = \"{}\"\np = {}\n", t.family.name(), t.p));
    let curve = CurveFile { name: None, places: t.places.iter().map(|s| s.place.clone()).collect() };
    out.push_str(&write_curve_file(&curve));
    for s in &t.places {
        let inertia: Vec<String> = s.galois.inertia_generators().iter().map(|a| toml_string(&a.to_string())).collect();
        out.push_str(&format!(
            "\n[[galois]]\nplace = {}\ninertia = [{}]\nfrobenius = {}\npot_mult_split = {}\n",
            toml_string(&s.place.label),
            inertia.join(", "),
            toml_string(&s.galois.frobenius().to_string()),
            s.hint.pot_mult_split
        ));
    }
    out
}

/// Writes a file that parses back to the same data.
#[must_use]
pub fn write_curve_file(file: &CurveFile) -> String {
    let mut out = String::new();
    if let Some(name) = &file.name {
        out.push_str(&format!("name = {}\n", toml_string(name)));
    }
    for d in &file.places {
        out.push_str(&format!("\n[[place]]\nplace = {}\nkind = \"{}\"\n", toml_string(&d.label), d.kind.name()));
        if d.is_finite() {
            out.push_str(&format!("p = {}\nq = {}\ntype = \"{}\"\n", d.residue_char, d.residue_size, d.reduction.name()));
            out.push_str(&format!("ord_delta = {}\n", d.ord_delta));
            if let Tamagawa::Exact(c) = d.tamagawa {
                out.push_str(&format!("c = {c}\n"));
            }
            out.push_str(&format!("omega_disc = {}\n", d.omega_disc));
        }
        if let Some(w) = d.w_override {
            out.push_str(&format!("w_override = {}\n", w.value()));
        }
    }
    out
}

fn toml_string(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    const X1_11: &str = "name = \"X1(11)\"\n\n[[place]]\nplace = \"inf\"\nkind = \"real\"\n\n[[place]]\nplace = \"11\"\nkind = \"finite\"\np = 11\ntype = \"split_mult\"\nord_delta = 1\n";

    const D10: &str = "family = \"dihedral\"\np = 5\n\n[[place]]\nplace = \"19\"\nkind = \"finite\"\np = 19\ntype = \"split_mult\"\nord_delta = 1\n\n[[galois]]\nplace = \"19\"\ninertia = [\"x+1\"]\nfrobenius = \"-x\"\n";

    #[test]
    fn tower_file_round_trips() {
        let t = parse_tower_file(D10).unwrap();
        assert_eq!(t.family, TowerFamily::Dihedral);
        assert_eq!(t.places[0].galois.decomposition_order(), 10);
        assert_eq!(parse_tower_file(&write_tower_file(&t)).unwrap(), t);
        let missing = D10.replace("[[galois]]\nplace = \"19\"", "[[galois]]\nplace = \"23\"");
        let err = parse_tower_file(&missing).unwrap_err();
        assert!(matches!(err, LocalError::Parse { line: 11, column: 1, .. }), "{err:?}");
        let bad = D10.replace("\"x+1\"", "\"2x\"");
        assert!(parse_tower_file(&bad).is_err());
    }

    #[test]
    fn parses_and_round_trips() {
        let f = parse_curve_file(X1_11).unwrap();
        assert_eq!(f.places.len(), 2);
        assert_eq!(f.places[1].tamagawa, Tamagawa::Exact(1));
        assert_eq!(f.at_prime(5).reduction, ReductionType::Good);
        assert_eq!(parse_curve_file(&write_curve_file(&f)).unwrap(), f);
    }

    #[test]
    fn unknown_key_has_position() {
        let text = "[[place]]\nplace = \"inf\"\nkind = \"real\"\ncolour = 1\n";
        match parse_curve_file(text) {
            Err(LocalError::Parse { line, message, .. }) => {
                assert_eq!(line, 4, "{message}");
                assert!(message.contains("colour"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn semantic_errors_point_at_record() {
        let text = "[[place]]\nplace = \"inf\"\nkind = \"real\"\n\n[[place]]\nplace = \"5\"\nkind = \"finite\"\np = 5\ntype = \"split_mult\"\nord_delta = 2\nc = 1\n";
        match parse_curve_file(text) {
            Err(LocalError::Parse { line, .. }) => assert!(line >= 5),
            other => panic!("{other:?}"),
        }
    }
}
