use std::fmt::Write;

use bridgestate::{EssentialSurface, InvariantReport, TwoBridgeKnot};

use crate::model::{join, KnotRecord, SurfaceJson, CENSUS_HEADER};

/// `genus2 / 2` as `1`, `3/2`, ...
pub fn genus(genus2: usize) -> String {
    if genus2 % 2 == 0 {
        (genus2 / 2).to_string()
    } else {
        format!("{genus2}/2")
    }
}

pub fn surfaces_table(knot: &TwoBridgeKnot, surfaces: &[EssentialSurface]) -> String {
    let mut s = String::new();
    writeln!(s, "{knot}: {} essential spanning surfaces", surfaces.len()).unwrap();
    writeln!(s, "{:<24} {:>2} {:<10} {:>6} {:>4} {:>4}", "expansion", "r", "orientable", "genus", "N+", "N-").unwrap();
    for x in surfaces {
        writeln!(
            s,
            "{:<24} {:>2} {:<10} {:>6} {:>4} {:>4}",
            x.expansion.to_string(),
            x.expansion.r(),
            if x.orientable { "yes" } else { "no" },
            genus(x.genus_twice),
            x.n_plus,
            x.n_minus
        )
        .unwrap();
    }
    s
}

pub fn surfaces_csv(knot: &TwoBridgeKnot, surfaces: &[EssentialSurface]) -> String {
    let mut s = String::from("alpha,beta,expansion,r,orientable,genus2,n_plus,n_minus\n");
    for x in surfaces {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            knot.alpha(),
            knot.beta(),
            join(x.expansion.terms()),
            x.expansion.r(),
            x.orientable,
            x.genus_twice,
            x.n_plus,
            x.n_minus
        )
        .unwrap();
    }
    s
}

pub fn surfaces_json(surfaces: &[EssentialSurface]) -> String {
    let rows: Vec<SurfaceJson> = surfaces.iter().map(SurfaceJson::from).collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn report_table(r: &InvariantReport) -> String {
    let mut s = String::new();
    writeln!(s, "{}", r.knot).unwrap();
    writeln!(s, "  determinant          {}", r.determinant).unwrap();
    writeln!(s, "  signature            {}", r.knot_signature).unwrap();
    writeln!(s, "  genus                {}", genus(r.genus_twice)).unwrap();
    writeln!(s, "  nonorientable genus  {}", genus(r.nonorientable_genus_twice)).unwrap();
    writeln!(s, "  Alexander polynomial {}", r.alexander.canonical()).unwrap();
    writeln!(s, "  slopes               {:?}", r.sorted_slopes()).unwrap();
    writeln!(s).unwrap();
    writeln!(s, "{:<24} {:>6} {:>6} {:>6} {:>8}  state polynomial", "expansion", "genus", "sigma", "slope", "|D(-1)|").unwrap();
    for rec in &r.surfaces {
        writeln!(
            s,
            "{:<24} {:>6} {:>6} {:>6} {:>8}  {}",
            rec.surface.expansion.to_string(),
            genus(rec.surface.genus_twice),
            rec.state_signature,
            rec.boundary_slope,
            rec.state_polynomial.abs_value_at_minus_one().to_string(),
            rec.state_polynomial.canonical()
        )
        .unwrap();
    }
    s
}

pub fn report_json(record: &KnotRecord) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn report_csv(record: &KnotRecord) -> String {
    format!("{CENSUS_HEADER}\n{}\n", record.csv_row())
}
