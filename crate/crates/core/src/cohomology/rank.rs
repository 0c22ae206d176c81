//! Numerical finite-type test on sampled jet values.

use std::collections::HashMap;
use std::fmt;
use std::io::Read;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{DiffPoly, Generator, Scalar};
use crate::error::Error;

/// Singular values below this fraction of the largest count as zero.
pub const RANK_FLOOR: f64 = 1e-8;

/// One sample: a real value of `u` and complex values of the jet coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleRow {
    pub u: f64,
    pub jets: HashMap<Generator, Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleTable {
    pub columns: Vec<Generator>,
    pub rows: Vec<SampleRow>,
    pub source: String,
}

/// `re+imi`, e.g. `0.5-2i`.
pub fn format_complex(c: Complex64) -> String {
    format!("{}{:+}i", c.re, c.im)
}

pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse().ok()?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse().ok()?,
    };
    Some(Complex64::new(re, im))
}

impl SampleTable {
    /// Random samples of a real solution's jet: `ū_j` is the conjugate of `u_j`.
    pub fn random(rows: usize, max_order: u32, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut columns = vec![Generator::Z, Generator::Zb];
        columns.extend((0..=max_order).map(Generator::U));
        columns.extend((0..=max_order).map(Generator::Ub));
        let rows = (0..rows)
            .map(|_| {
                let u = rng.gen_range(-1.0..1.0);
                let mut jets = HashMap::new();
                let mut draw = |g: Generator, rng: &mut ChaCha8Rng| {
                    let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    jets.insert(g, c);
                    jets.insert(g.conj(), c.conj());
                };
                draw(Generator::Z, &mut rng);
                for j in 0..=max_order {
                    draw(Generator::U(j), &mut rng);
                }
                SampleRow { u, jets }
            })
            .collect();
        SampleTable {
            columns,
            rows,
            source: format!("random(seed = {})", seed),
        }
    }

    /// Reads a table whose header names `u` and generator columns.
    pub fn from_csv(r: impl Read, source: &str) -> Result<Self, Error> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
        let header = rdr.headers().map_err(|e| Error::Data(e.to_string()))?.clone();
        let mut u_col = None;
        let mut cols = Vec::new();
        for (k, name) in header.iter().enumerate() {
            if name == "u" {
                u_col = Some(k);
            } else {
                let g = Generator::parse(name).ok_or_else(|| Error::Data(format!("unknown column '{}'", name)))?;
                cols.push((k, g));
            }
        }
        let u_col = u_col.ok_or_else(|| Error::Data("missing column 'u'".into()))?;
        let mut rows = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Data(e.to_string()))?;
            let cell = |k: usize| {
                let t = rec.get(k).unwrap_or("");
                parse_complex(t).ok_or_else(|| Error::Data(format!("row {}: bad entry '{}'", line + 1, t)))
            };
            let u = cell(u_col)?;
            if u.im != 0.0 {
                return Err(Error::Data(format!("row {}: u must be real", line + 1)));
            }
            let mut jets = HashMap::new();
            for &(k, g) in &cols {
                jets.insert(g, cell(k)?);
            }
            rows.push(SampleRow { u: u.re, jets });
        }
        Ok(SampleTable {
            columns: cols.into_iter().map(|c| c.1).collect(),
            rows,
            source: source.into(),
        })
    }

    pub fn to_csv(&self) -> Result<String, Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["u".to_string()];
        header.extend(self.columns.iter().map(|g| g.to_string()));
        w.write_record(&header).map_err(|e| Error::Data(e.to_string()))?;
        for row in &self.rows {
            let mut rec = vec![format_complex(Complex64::new(row.u, 0.0))];
            for g in &self.columns {
                rec.push(format_complex(row.jets.get(g).copied().unwrap_or_default()));
            }
            w.write_record(&rec).map_err(|e| Error::Data(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Data(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Data(e.to_string()))
    }
}

/// `g_k = Σ_{j<g} (c_{2j} g_j + c_{2j+1} ḡ_j)` for the first generator `g_k` past the spanning set.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// Number of leading generators that span the rest.
    pub spanning: usize,
    /// Coefficients over `g_0, ḡ_0, …, g_{s−1}, ḡ_{s−1}, g_s`, the last one `−1`.
    pub relation: Vec<Complex64>,
    /// Relative residual of the relation on the samples.
    pub residual: f64,
    /// Exact check of the relation after rounding to small rationals, when possible.
    pub exact: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub certificate: Option<Certificate>,
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank = {}", self.rank)?;
        let sv: Vec<String> = self.singular_values.iter().map(|s| format!("{:.3e}", s)).collect();
        writeln!(f, "singular values = [{}]", sv.join(", "))?;
        match &self.certificate {
            None => write!(f, "independent at this sample size"),
            Some(c) => {
                let rel: Vec<String> = c.relation.iter().map(|z| format_complex(round(*z))).collect();
                write!(
                    f,
                    "dependent after {} generators: relation [{}]",
                    c.spanning,
                    rel.join(", ")
                )?;
                write!(f, ", residual {:.1e}", c.residual)?;
                match c.exact {
                    Some(true) => write!(f, ", verified exactly"),
                    Some(false) => write!(f, ", exact check failed"),
                    None => Ok(()),
                }
            }
        }
    }
}

fn round(z: Complex64) -> Complex64 {
    let r = |x: f64| (x * 1e9).round() / 1e9 + 0.0;
    Complex64::new(r(z.re), r(z.im))
}

fn numeric_rank(m: &DMatrix<Complex64>) -> (usize, Vec<f64>) {
    if m.ncols() == 0 {
        return (0, Vec::new());
    }
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let top = sv.first().copied().unwrap_or(0.0);
    let rank = if top == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > RANK_FLOOR * top).count()
    };
    (rank, sv)
}

fn small_rational(x: f64) -> Option<BigRational> {
    (1..=1000i64).find_map(|d| {
        let n = (x * d as f64).round();
        ((x * d as f64 - n).abs() < 1e-6 * d as f64)
            .then(|| BigRational::from_f64(n).unwrap() / BigRational::from_integer(d.into()))
    })
}

fn exact_check(gens: &[DiffPoly], spanning: usize, relation: &[Complex64]) -> Option<bool> {
    let mut sum = DiffPoly::zero();
    for (k, c) in relation.iter().enumerate() {
        let s = Scalar::from_parts(
            small_rational(c.re)?,
            small_rational(c.im)?,
            BigRational::from_integer(0.into()),
            BigRational::from_integer(0.into()),
        );
        let g = if k == relation.len() - 1 {
            gens[spanning].clone()
        } else if k % 2 == 0 {
            gens[k / 2].clone()
        } else {
            gens[k / 2].conjugate()
        };
        sum += &g.scale(&s);
    }
    Some(sum.is_zero())
}

/// Numerical rank of `[g_0, ḡ_0, g_1, ḡ_1, …]` evaluated on the samples, and
/// the least `s` such that every later generator is a combination of the first `s`.
pub fn finite_type_rank(table: &SampleTable, gens: &[DiffPoly]) -> Result<RankReport, Error> {
    if gens.is_empty() {
        return Ok(RankReport {
            rank: 0,
            singular_values: Vec::new(),
            certificate: None,
        });
    }
    let ncols = 2 * gens.len();
    if table.rows.len() < ncols {
        return Err(Error::InsufficientRows {
            needed: ncols,
            got: table.rows.len(),
        });
    }
    let mut raw = DMatrix::<Complex64>::zeros(table.rows.len(), ncols);
    for (i, row) in table.rows.iter().enumerate() {
        for (j, g) in gens.iter().enumerate() {
            raw[(i, 2 * j)] = g.eval_numeric(&row.jets, row.u)?;
            raw[(i, 2 * j + 1)] = g.conjugate().eval_numeric(&row.jets, row.u)?;
        }
    }
    let mut scaled = raw.clone();
    for mut c in scaled.column_iter_mut() {
        let n = c.norm();
        if n > 0.0 {
            c /= Complex64::new(n, 0.0);
        }
    }
    let (rank, singular_values) = numeric_rank(&scaled);
    let mut certificate = None;
    for s in 0..gens.len() {
        let base = scaled.columns(0, 2 * s).into_owned();
        let r0 = numeric_rank(&base).0;
        let spans = (s..gens.len()).all(|k| {
            let ext = base.clone().insert_columns(2 * s, 2, Complex64::new(0.0, 0.0));
            let mut ext = ext;
            ext.set_column(2 * s, &scaled.column(2 * k));
            ext.set_column(2 * s + 1, &scaled.column(2 * k + 1));
            numeric_rank(&ext).0 == r0
        });
        if spans {
            let a = raw.columns(0, 2 * s).into_owned();
            let target = raw.column(2 * s).into_owned();
            let (coeffs, fit): (Vec<Complex64>, DVector<Complex64>) = if s == 0 {
                (Vec::new(), DVector::zeros(target.len()))
            } else {
                let c = a
                    .clone()
                    .svd(true, true)
                    .solve(&target, RANK_FLOOR)
                    .map_err(|e| Error::Data(e.to_string()))?;
                let fit = &a * &c;
                (c.iter().copied().collect(), fit)
            };
            let tn = target.norm();
            let residual = if tn > 0.0 { (fit - &target).norm() / tn } else { 0.0 };
            let mut relation = coeffs;
            relation.push(Complex64::new(-1.0, 0.0));
            let exact = exact_check(gens, s, &relation);
            certificate = Some(Certificate {
                spanning: s,
                relation,
                residual,
                exact,
            });
            break;
        }
    }
    Ok(RankReport {
        rank,
        singular_values,
        certificate,
    })
}
