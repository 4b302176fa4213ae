use std::fmt::Write as _;

use chrono::Datelike;

use crate::kg::vocab::compact;

use super::generate::Timeline;

/// `start end role connected provenance` lines after a `#` header.
pub fn render_tsv(timeline: &Timeline) -> String {
    let mut out = format!("# {}\n", compact(&timeline.entity));
    for e in &timeline.entries {
        let t = &e.relation.time;
        let show = |p: Option<crate::kg::TimePoint>| p.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            show(t.start),
            show(t.end),
            compact(&e.relation.role),
            compact(&e.connected_entity),
            e.relation.provenance_kind.as_str()
        );
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// A static page with one row per entry and an orange bar for its validity.
pub fn render_html(timeline: &Timeline) -> String {
    const ROW: f64 = 28.0;
    const LEFT: f64 = 360.0;
    const WIDTH: f64 = 600.0;
    let days: Vec<i64> = timeline
        .entries
        .iter()
        .flat_map(|e| [e.relation.time.start_date(), e.relation.time.end_date()])
        .flatten()
        .map(|d| d.num_days_from_ce() as i64)
        .collect();
    let lo = days.iter().copied().min().unwrap_or(0);
    let hi = days.iter().copied().max().unwrap_or(0).max(lo + 1);
    let x = |d: i64| LEFT + (d - lo) as f64 / (hi - lo) as f64 * WIDTH;
    let height = ROW * (timeline.entries.len() as f64 + 1.0);
    let title = escape(&compact(&timeline.entity));
    let mut svg = String::new();
    for (i, e) in timeline.entries.iter().enumerate() {
        let y = ROW * (i as f64 + 1.0);
        let t = &e.relation.time;
        let label = format!("{} {}", compact(&e.relation.role), compact(&e.connected_entity));
        let _ = writeln!(svg, "<text x=\"4\" y=\"{:.1}\">{}</text>", y + 4.0, escape(&label));
        let s = t.start_date().or(t.end_date()).map(|d| d.num_days_from_ce() as i64);
        let f = t.end_date().or(t.start_date()).map(|d| d.num_days_from_ce() as i64);
        if let (Some(s), Some(f)) = (s, f) {
            let _ = writeln!(
                svg,
                "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"orange\" stroke-width=\"6\" stroke-linecap=\"round\"><title>{}</title></line>",
                x(s),
                x(f).max(x(s) + 1.0),
                escape(&t.to_string())
            );
        }
    }
    let first = chrono::NaiveDate::from_num_days_from_ce_opt(lo as i32).map(|d| d.year()).unwrap_or(0);
    let last = chrono::NaiveDate::from_num_days_from_ce_opt(hi as i32).map(|d| d.year()).unwrap_or(0);
    format!(
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>{title}</title></head>\n<body>\n<h1>{title}</h1>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <text x=\"{LEFT:.0}\" y=\"12\">{first}</text><text x=\"{end:.0}\" y=\"12\" text-anchor=\"end\">{last}</text>\n{svg}</svg>\n</body></html>\n",
        w = LEFT + WIDTH + 20.0,
        h = height + 10.0,
        end = LEFT + WIDTH,
    )
}
