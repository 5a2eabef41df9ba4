//! Published reference tables of `#Per / p^n` and a harness that compares
//! them with the exact values computed here.
//!
//! Printed cells are compared with [`render_binary32_display`]: the values
//! were produced as low-precision floating-point quotients, and a handful of
//! cells (e.g. `14/27` printed as `0.518518518`) only agree once the count,
//! the field size and their quotient are rounded to 32-bit mantissas.
//! Footers are exact limits and are compared in decimal at the printed number
//! of significant digits, accepting either rounding or truncation.

use std::fmt;

use num_traits::ToPrimitive;

use crate::census::{analytic_count, brute_census};
use crate::dynmaps::MapSpec;
use crate::error::Result;
use crate::ffield::{build_field, EnumBudget};
use crate::limits::{limit, tower, TowerQuery};
use crate::numthy::big_pow;
use crate::ratio::{render_binary32_display, render_decimal, render_truncated, ExactRatio};

/// Fields up to this size are brute-forced to confirm a disputed cell.
pub const BRUTE_CONFIRM_LIMIT: u64 = 1 << 20;

/// One column: a characteristic and `delta`, the printed rows and footer.
#[derive(Debug, Clone, Copy)]
pub struct GoldenColumn {
    pub p: u64,
    /// `None` means `Delta`.
    pub delta: Option<u64>,
    /// Row labels as extension degrees.
    pub ns: &'static [u64],
    pub cells: &'static [&'static str],
    pub footer: &'static str,
    /// Printed `{q_i : i in I}`, when the table lists it.
    pub i_primes: Option<&'static [u64]>,
    /// Printed `{q_j : j in J}`, when the table lists it.
    pub j_primes: Option<&'static [u64]>,
}

#[derive(Debug, Clone, Copy)]
pub struct GoldenTable {
    pub name: &'static str,
    pub map: &'static str,
    pub nu: &'static [u32],
    pub columns: &'static [GoldenColumn],
    /// Cells whose row labels are known not to match their printed values;
    /// mismatches here are reported, not failed.
    pub informational: bool,
}

impl GoldenTable {
    pub fn map_spec(&self) -> MapSpec {
        self.map
            .parse()
            .expect("reference map strings are well formed")
    }

    pub fn query(&self, col: &GoldenColumn) -> Result<TowerQuery> {
        TowerQuery::new(col.p, self.map_spec(), col.delta, self.nu.to_vec(), None)
    }
}

const fn col(
    p: u64,
    delta: Option<u64>,
    ns: &'static [u64],
    cells: &'static [&'static str],
    footer: &'static str,
) -> GoldenColumn {
    GoldenColumn {
        p,
        delta,
        ns,
        cells,
        footer,
        i_primes: None,
        j_primes: None,
    }
}

const fn sets(mut c: GoldenColumn, i: Option<&'static [u64]>, j: &'static [u64]) -> GoldenColumn {
    c.i_primes = i;
    c.j_primes = Some(j);
    c
}

static TABLES: &[GoldenTable] = &[
    GoldenTable {
        name: "z^2, n odd",
        map: "power:2",
        nu: &[0],
        informational: false,
        columns: &[
            col(
                3,
                None,
                &[1, 3, 5, 7],
                &["0.666666667", "0.518518518", "0.502057613", "0.500228624"],
                "0.5",
            ),
            col(
                5,
                None,
                &[1, 3, 5, 7],
                &["0.400000000", "0.256000000", "0.250240000", "0.250009600"],
                "0.25",
            ),
            col(
                41,
                None,
                &[1, 3, 5, 7],
                &["0.146341463", "0.125012696", "0.125000008", "0.125000000"],
                "0.125",
            ),
            col(
                17,
                None,
                &[1, 3, 5, 7],
                &[
                    "0.117647059",
                    "0.0626908203",
                    "0.0625006603",
                    "0.0625000023",
                ],
                "0.0625",
            ),
        ],
    },
    GoldenTable {
        name: "z^2, v_2(n) = 1",
        map: "power:2",
        nu: &[1],
        informational: false,
        columns: &[
            col(
                3,
                None,
                &[2, 6, 10, 14],
                &["0.222222222", "0.126200274", "0.125014818", "0.125000183"],
                "0.125",
            ),
            col(
                7,
                None,
                &[2, 6, 10, 14],
                &[
                    "0.0816326530",
                    "0.0625079686",
                    "0.0625000033",
                    "0.0625000000",
                ],
                "0.0625",
            ),
            col(
                17,
                None,
                &[2, 6, 10, 14],
                &[
                    "0.0346020761",
                    "0.0312500401",
                    "0.0312500000",
                    "0.0312500000",
                ],
                "0.03125",
            ),
        ],
    },
    GoldenTable {
        name: "z^3, v_3(n) = 0",
        map: "power:3",
        nu: &[0],
        informational: false,
        columns: &[
            col(
                5,
                None,
                &[2, 4, 8],
                &["0.360000000", "0.334400000", "0.333335040"],
                "0.333333333",
            ),
            col(
                19,
                None,
                &[1, 2, 4],
                &["0.157894737", "0.113573407", "0.111117932"],
                "0.111111111",
            ),
            col(
                53,
                None,
                &[2, 4, 8],
                &["0.0373798505", "0.0370371591", "0.0370370371"],
                "0.0370370370",
            ),
        ],
    },
    GoldenTable {
        name: "z^3, v_3(n) = 1",
        map: "power:3",
        nu: &[1],
        informational: false,
        columns: &[
            col(
                5,
                None,
                &[6, 12, 24],
                &["0.111168000", "0.111111115", "0.111111111"],
                "0.111111111",
            ),
            col(
                19,
                None,
                &[3, 6, 12],
                &["0.0371774311", "0.0370370575", "0.0370370370"],
                "0.0370370370",
            ),
            col(
                53,
                None,
                &[6, 12, 24],
                &["0.0123456791", "0.0123456790", "0.0123456790"],
                "0.0123456790",
            ),
        ],
    },
    GoldenTable {
        name: "z^15 over F_{2^n}, nu = (0, 0)",
        map: "power:15",
        nu: &[0, 0],
        informational: false,
        columns: &[
            sets(
                col(
                    2,
                    Some(1),
                    &[1, 7, 11],
                    &["1.00000000", "1.00000000", "1.00000000"],
                    "1",
                ),
                None,
                &[],
            ),
            sets(
                col(
                    2,
                    Some(2),
                    &[2, 14, 22],
                    &["0.500000000", "0.333374023", "0.333333492"],
                    "0.333333333",
                ),
                None,
                &[3],
            ),
            sets(
                col(
                    2,
                    Some(4),
                    &[4, 28, 44],
                    &["0.125000000", "0.0666666701", "0.0666666667"],
                    "0.0666666666",
                ),
                None,
                &[3, 5],
            ),
        ],
    },
    GoldenTable {
        name: "z^15 over F_{2^n}, nu = (1, 0)",
        map: "power:15",
        nu: &[1, 0],
        informational: false,
        columns: &[
            sets(
                col(
                    2,
                    Some(1),
                    &[3, 21, 33],
                    &["1.00000000", "1.00000000", "1.00000000"],
                    "1",
                ),
                None,
                &[],
            ),
            sets(
                col(
                    2,
                    Some(2),
                    &[6, 42, 66],
                    &["0.125000000", "0.111111111", "0.111111111"],
                    "0.111111111",
                ),
                None,
                &[3],
            ),
            sets(
                col(
                    2,
                    Some(4),
                    &[12, 84, 132],
                    &["0.0224609375", "0.0222222222", "0.0222222222"],
                    "0.0222222222",
                ),
                None,
                &[3, 5],
            ),
        ],
    },
    GoldenTable {
        name: "T_2, n odd",
        map: "cheb:2",
        nu: &[0],
        informational: false,
        columns: &[
            col(
                3,
                None,
                &[1, 3, 5, 7],
                &["0.333333333", "0.370370370", "0.374485597", "0.374942844"],
                "0.375",
            ),
            col(
                7,
                None,
                &[1, 3, 5, 7],
                &["0.285714286", "0.311953353", "0.312488844", "0.312499772"],
                "0.3125",
            ),
            col(
                17,
                None,
                &[1, 3, 5, 7],
                &["0.294117647", "0.281294525", "0.281250154", "0.281250001"],
                "0.28125",
            ),
        ],
    },
    GoldenTable {
        name: "T_2, v_2(n) = 1",
        map: "cheb:2",
        nu: &[1],
        informational: false,
        columns: &[
            col(
                3,
                None,
                &[2, 6, 10, 14],
                &["0.333333333", "0.312757202", "0.312503175", "0.312500039"],
                "0.3125",
            ),
            col(
                7,
                None,
                &[2, 6, 10, 14],
                &["0.285714286", "0.281251859", "0.281250001", "0.281250000"],
                "0.28125",
            ),
            col(
                17,
                None,
                &[2, 6, 10, 14],
                &["0.266435986", "0.265625010", "0.265625000", "0.265625000"],
                "0.265625",
            ),
        ],
    },
    GoldenTable {
        name: "T_3, v_3(n) = 0",
        map: "cheb:3",
        nu: &[0],
        informational: false,
        columns: &[
            col(
                5,
                None,
                &[1, 2, 4],
                &["0.600000000", "0.680000000", "0.667200000"],
                "0.666666667",
            ),
            col(
                19,
                None,
                &[1, 2, 4],
                &["0.578947368", "0.556786704", "0.555558966"],
                "0.555555556",
            ),
            col(
                53,
                None,
                &[1, 2, 4],
                &["0.509433962", "0.518689925", "0.518518579"],
                "0.518518519",
            ),
        ],
    },
    GoldenTable {
        name: "T_15 over F_{2^n}, nu = (0, 0)",
        map: "cheb:15",
        nu: &[0, 0],
        informational: true,
        columns: &[
            sets(
                col(
                    2,
                    Some(1),
                    &[1, 7, 11],
                    &["0.500000000", "0.656250000", "0.664062500"],
                    "0.666666667",
                ),
                Some(&[3]),
                &[],
            ),
            sets(
                col(
                    2,
                    Some(2),
                    &[2, 14, 22],
                    &["0.266662598", "0.266666651", "0.266666667"],
                    "0.266666667",
                ),
                Some(&[5]),
                &[3],
            ),
            sets(
                col(
                    2,
                    Some(4),
                    &[4, 28, 44],
                    &["0.562500000", "0.506667137", "0.533333335"],
                    "0.533333333",
                ),
                Some(&[]),
                &[3, 5],
            ),
        ],
    },
];

/// All reference tables.
pub fn published_tables() -> &'static [GoldenTable] {
    TABLES
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    Match,
    /// Disagrees, in a table flagged as informational.
    KnownDiscrepancy,
    Mismatch,
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellStatus::Match => "match",
            CellStatus::KnownDiscrepancy => "known-discrepancy",
            CellStatus::Mismatch => "MISMATCH",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CellReport {
    pub table: &'static str,
    pub p: u64,
    pub delta: Option<u64>,
    pub n: u64,
    pub printed: &'static str,
    pub value: ExactRatio,
    /// The value as the reference printout would display it.
    pub displayed: String,
    pub status: CellStatus,
    /// For disagreeing cells in small fields: whether a brute-force census
    /// agrees with `value`.
    pub brute_confirmed: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct FooterReport {
    pub table: &'static str,
    pub p: u64,
    pub delta: Option<u64>,
    pub printed: &'static str,
    pub value: ExactRatio,
    pub rendered: String,
    pub matches: bool,
    /// The printed `I` and `J` sets, when listed, agree with the computed ones.
    pub sets_match: bool,
}

/// Significant digits in a printed decimal such as `0.0370370370` (9).
pub fn printed_sig_figs(s: &str) -> usize {
    let digits: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.trim_start_matches('0').len().max(1)
}

/// Whether `printed` is `value` rounded or truncated to its own length.
pub fn footer_matches(printed: &str, value: &ExactRatio) -> bool {
    let sig = printed_sig_figs(printed);
    render_decimal(value, sig) == printed || render_truncated(value, sig) == printed
}

fn brute_agrees(p: u64, n: u64, map: &MapSpec, budget: EnumBudget) -> Result<Option<bool>> {
    let size = match big_pow(p, n).to_u64() {
        Some(s) if s <= BRUTE_CONFIRM_LIMIT.min(budget.0) => s,
        _ => return Ok(None),
    };
    let field = build_field(p, n as usize)?;
    let census = brute_census(&field, map, budget)?;
    debug_assert_eq!(census.field_size, size);
    Ok(Some(
        analytic_count(p, n, map)? == census.periodic_count.into(),
    ))
}

/// Compares every printed cell with the computed ratio at its row label.
pub fn compare_cells(budget: EnumBudget) -> Result<Vec<CellReport>> {
    let mut out = Vec::new();
    for table in TABLES {
        let map = table.map_spec();
        for col in table.columns {
            for (&n, &printed) in col.ns.iter().zip(col.cells) {
                let count = analytic_count(col.p, n, &map)?;
                let size = big_pow(col.p, n);
                let displayed = render_binary32_display(&count, &size);
                let value = ExactRatio::new(count, size)?;
                let (status, brute_confirmed) = if displayed == printed {
                    (CellStatus::Match, None)
                } else if table.informational {
                    (
                        CellStatus::KnownDiscrepancy,
                        brute_agrees(col.p, n, &map, budget)?,
                    )
                } else {
                    (CellStatus::Mismatch, brute_agrees(col.p, n, &map, budget)?)
                };
                out.push(CellReport {
                    table: table.name,
                    p: col.p,
                    delta: col.delta,
                    n,
                    printed,
                    value,
                    displayed,
                    status,
                    brute_confirmed,
                });
            }
        }
    }
    Ok(out)
}

/// Compares every printed footer with the closed-form limit.
pub fn compare_footers() -> Result<Vec<FooterReport>> {
    let mut out = Vec::new();
    for table in TABLES {
        for col in table.columns {
            let lim = limit(&table.query(col)?)?;
            let sets_match = col.i_primes.map_or(true, |i| i == lim.i_primes.as_slice())
                && col.j_primes.map_or(true, |j| j == lim.j_primes.as_slice());
            out.push(FooterReport {
                table: table.name,
                p: col.p,
                delta: col.delta,
                printed: col.footer,
                rendered: render_decimal(&lim.value, printed_sig_figs(col.footer)),
                matches: footer_matches(col.footer, &lim.value),
                value: lim.value,
                sets_match,
            });
        }
    }
    Ok(out)
}

/// Whether each column's row labels are the first members of its tower.
pub fn rows_follow_towers() -> Result<bool> {
    for table in TABLES {
        for col in table.columns {
            let members = tower(&table.query(col)?, col.ns.len())?;
            if members != col.ns {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
