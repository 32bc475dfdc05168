//! Static braid diagrams, time running downward.
//!
//! A crossing drawn with a positive letter has the strand coming from the
//! left position in front. On the annulus the two side edges are the cut
//! `arg = a`; strands leaving through one edge come back through the other.

use std::fmt::Write;

use clap::ValueEnum;
use fewbraid::annular::{Generator, Letter};
use fewbraid::{AnnularWord, ArtinWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Svg,
    Ascii,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    /// Exchange positions `i` and `i + 1`; with `wrap`, positions `n` and `1`
    /// across the cut.
    Cross { i: usize, positive: bool, wrap: bool },
    /// Every strand moves one position to the right (`positive`) or left.
    Rotate { positive: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    strands: usize,
    annular: bool,
    rows: Vec<(String, Move)>,
}

impl Diagram {
    pub fn artin(w: &ArtinWord) -> Self {
        let rows = w
            .letters()
            .iter()
            .map(|&l| {
                let label = if l > 0 { format!("s{l}") } else { format!("S{}", -l) };
                (label, Move::Cross { i: l.unsigned_abs() as usize, positive: l > 0, wrap: false })
            })
            .collect();
        Self { strands: w.strands(), annular: false, rows }
    }

    /// `r_j` letters are drawn through their expansion in `τ` and `b_j`.
    pub fn annular(w: &AnnularWord) -> Self {
        let d = w.d();
        let mut rows = Vec::new();
        for &l in w.letters() {
            let single = |l: Letter| AnnularWord::new(d, vec![l]).expect("letter of a valid word");
            let letters = match l.gen {
                Generator::R(_) => single(l).expand().letters().to_vec(),
                _ => vec![l],
            };
            for x in letters {
                let mv = match x.gen {
                    Generator::Tau => Move::Rotate { positive: !x.inverse },
                    Generator::B(j) => Move::Cross { i: j, positive: !x.inverse, wrap: j == d },
                    Generator::R(_) => unreachable!("expanded"),
                };
                rows.push((x.to_string(), mv));
            }
        }
        Self { strands: d, annular: true, rows }
    }

    pub fn render(&self, style: Style) -> String {
        match style {
            Style::Svg => self.svg(),
            Style::Ascii => self.ascii(),
        }
    }

    /// Position of each strand after every row, starting from the identity.
    fn positions(&self) -> Vec<Vec<usize>> {
        let n = self.strands;
        let mut at: Vec<usize> = (0..n).collect();
        let mut out = vec![at.clone()];
        for (_, mv) in &self.rows {
            match *mv {
                Move::Cross { i, wrap, .. } => {
                    let (p, q) = if wrap { (n - 1, 0) } else { (i - 1, i) };
                    at.swap(p, q);
                }
                Move::Rotate { positive: true } => at.rotate_right(1),
                Move::Rotate { positive: false } => at.rotate_left(1),
            }
            out.push(at.clone());
        }
        out
    }

    fn ascii(&self) -> String {
        const LEFT: usize = 8;
        let n = self.strands;
        let col = |i: usize| LEFT + 4 * i;
        let width = col(n - 1) + 4;
        let mut out = String::new();
        let blank = |label: &str| {
            let mut l = vec![b' '; width];
            l[..label.len().min(6)].copy_from_slice(&label.as_bytes()[..label.len().min(6)]);
            l
        };
        let straight = |l: &mut Vec<u8>, skip: &[usize]| {
            for i in (0..n).filter(|i| !skip.contains(i)) {
                l[col(i)] = b'|';
            }
        };
        for (label, mv) in &self.rows {
            let mut lines = [blank(""), blank(label), blank("")];
            match *mv {
                Move::Cross { i, positive, wrap: false } => {
                    let c = col(i - 1);
                    for l in lines.iter_mut() {
                        straight(l, &[i - 1, i]);
                    }
                    lines[0][c + 1] = b'\\';
                    lines[0][c + 3] = b'/';
                    lines[1][c + 2] = if positive { b'\\' } else { b'/' };
                    lines[2][c + 1] = b'/';
                    lines[2][c + 3] = b'\\';
                }
                Move::Cross { positive, wrap: true, .. } => {
                    let (first, last) = (col(0), col(n - 1));
                    for l in lines.iter_mut() {
                        straight(l, &[0, n - 1]);
                    }
                    lines[0][last + 1] = b'\\';
                    lines[0][first - 1] = b'/';
                    lines[1][last + 2] = if positive { b'\\' } else { b'/' };
                    lines[1][first - 2] = b'~';
                    lines[2][first - 1] = b'\\';
                    lines[2][last + 1] = b'/';
                }
                Move::Rotate { positive } => {
                    let (s, arrow) = if positive { (b'\\', b'>') } else { (b'/', b'<') };
                    for i in 0..n {
                        let c = col(i);
                        if positive {
                            lines[0][c + 1] = s;
                            if i + 1 < n {
                                lines[1][c + 2] = s;
                                lines[2][c + 3] = s;
                            }
                        } else {
                            lines[0][c - 1] = s;
                            if i > 0 {
                                lines[1][c - 2] = s;
                                lines[2][c - 3] = s;
                            }
                        }
                    }
                    let (from, to) = if positive { (col(n - 1) + 2, col(0) - 2) } else { (col(0) - 2, col(n - 1) + 2) };
                    lines[1][from] = arrow;
                    lines[1][to] = arrow;
                    if positive {
                        lines[2][col(0) - 1] = s;
                    } else {
                        lines[2][col(n - 1) + 1] = s;
                    }
                }
            }
            for l in lines {
                out.push_str(String::from_utf8(l).expect("ascii").trim_end());
                out.push('\n');
            }
        }
        if self.rows.is_empty() {
            let mut l = blank("e");
            straight(&mut l, &[]);
            out.push_str(String::from_utf8(l).expect("ascii").trim_end());
            out.push('\n');
        }
        out
    }

    fn svg(&self) -> String {
        const GAP: f64 = 40.0;
        const ROW: f64 = 48.0;
        const LEFT: f64 = 80.0;
        const TOP: f64 = 24.0;
        const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];
        let n = self.strands;
        let x = |i: usize| LEFT + GAP * i as f64;
        let (left_edge, right_edge) = (x(0) - GAP / 2.0, x(n - 1) + GAP / 2.0);
        let rows = self.rows.len().max(1);
        let height = TOP * 2.0 + ROW * rows as f64;
        let width = right_edge + GAP;
        let positions = self.positions();

        let mut body = String::new();
        let stroke = |body: &mut String, strand: usize, d: &str, front: bool| {
            let colour = PALETTE[strand % PALETTE.len()];
            if front {
                let _ = writeln!(body, r#"  <path d="{d}" fill="none" stroke="white" stroke-width="9"/>"#);
            }
            let _ = writeln!(body, r#"  <path d="{d}" fill="none" stroke="{colour}" stroke-width="3"/>"#);
        };
        let curve = |x0: f64, y0: f64, x1: f64, y1: f64| {
            let ym = (y0 + y1) / 2.0;
            format!("M {x0} {y0} C {x0} {ym} {x1} {ym} {x1} {y1}")
        };
        if self.annular {
            for edge in [left_edge, right_edge] {
                let _ = writeln!(body, r##"  <line x1="{edge}" y1="{TOP}" x2="{edge}" y2="{}" stroke="#999" stroke-dasharray="4 4"/>"##, height - TOP);
            }
            let _ = writeln!(body, r##"  <text x="{left_edge}" y="{}" font-size="10" text-anchor="middle" fill="#999">cut</text>"##, TOP - 8.0);
        }
        for (r, (label, mv)) in self.rows.iter().enumerate() {
            let (y0, y1) = (TOP + ROW * r as f64, TOP + ROW * (r + 1) as f64);
            let ym = (y0 + y1) / 2.0;
            let at = &positions[r];
            let _ = writeln!(body, r#"  <text x="16" y="{}" font-size="14" font-family="monospace">{label}</text>"#, ym + 5.0);
            let mut moving: Vec<usize> = Vec::new();
            let mut back: Vec<(usize, String)> = Vec::new();
            let mut front: Vec<(usize, String)> = Vec::new();
            match *mv {
                Move::Cross { i, positive, wrap: false } => {
                    let (p, q) = (i - 1, i);
                    moving.extend([p, q]);
                    let from_left = (at[p], curve(x(p), y0, x(q), y1));
                    let from_right = (at[q], curve(x(q), y0, x(p), y1));
                    let (f, b) = if positive { (from_left, from_right) } else { (from_right, from_left) };
                    front.push(f);
                    back.push(b);
                }
                Move::Cross { positive, wrap: true, .. } => {
                    let (p, q) = (n - 1, 0);
                    moving.extend([p, q]);
                    let out_right = format!("{} {}", curve(x(p), y0, right_edge, ym), curve(left_edge, ym, x(q), y1));
                    let out_left = format!("{} {}", curve(x(q), y0, left_edge, ym), curve(right_edge, ym, x(p), y1));
                    let (f, b) = if positive { ((at[p], out_right), (at[q], out_left)) } else { ((at[q], out_left), (at[p], out_right)) };
                    front.push(f);
                    back.push(b);
                }
                Move::Rotate { positive } => {
                    moving.extend(0..n);
                    #[allow(clippy::needless_range_loop)]
                    for i in 0..n {
                        let d = match (positive, i) {
                            (true, i) if i + 1 == n => format!("{} {}", curve(x(i), y0, right_edge, ym), curve(left_edge, ym, x(0), y1)),
                            (true, i) => curve(x(i), y0, x(i + 1), y1),
                            (false, 0) => format!("{} {}", curve(x(0), y0, left_edge, ym), curve(right_edge, ym, x(n - 1), y1)),
                            (false, i) => curve(x(i), y0, x(i - 1), y1),
                        };
                        back.push((at[i], d));
                    }
                    let (a, b) = if positive { (right_edge, left_edge) } else { (left_edge, right_edge) };
                    for e in [a, b] {
                        let _ = writeln!(body, r##"  <circle cx="{e}" cy="{ym}" r="4" fill="none" stroke="#555"/>"##);
                    }
                }
            }
            for i in (0..n).filter(|i| !moving.contains(i)) {
                stroke(&mut body, at[i], &format!("M {0} {y0} L {0} {y1}", x(i)), false);
            }
            for (s, d) in back {
                stroke(&mut body, s, &d, false);
            }
            for (s, d) in front {
                stroke(&mut body, s, &d, true);
            }
        }
        if self.rows.is_empty() {
            for i in 0..n {
                stroke(&mut body, i, &format!("M {0} {TOP} L {0} {1}", x(i), TOP + ROW), false);
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#);
        let _ = writeln!(out, "  <!-- fewbraid {} -->", env!("CARGO_PKG_VERSION"));
        out.push_str(&body);
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn annular(d: usize, s: &str) -> Diagram {
        Diagram::annular(&AnnularWord::parse(d, s).unwrap())
    }

    #[test]
    fn identity_is_straight() {
        let text = annular(4, "").render(Style::Ascii);
        assert_eq!(text.lines().count(), 1);
        assert_eq!(text.matches('|').count(), 4);
        let svg = annular(4, "").render(Style::Svg);
        assert_eq!(svg.matches(" L ").count(), 4);
    }

    #[test]
    fn one_crossing() {
        let text = annular(3, "b1").render(Style::Ascii);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1].matches('\\').count(), 1);
        // the third strand stays put
        assert!(lines.iter().all(|l| l.matches('|').count() == 1));
        let svg = annular(3, "b1").render(Style::Svg);
        assert_eq!(svg.matches(r#"stroke="white""#).count(), 1);
        assert_eq!(svg.matches(" C ").count(), 3, "the front strand is drawn over a halo");
        let inv = annular(3, "B1").render(Style::Ascii);
        assert_eq!(inv.lines().nth(1).unwrap().matches('/').count(), 1);
    }

    #[test]
    fn tau_wraps_around() {
        let text = annular(3, "t").render(Style::Ascii);
        assert_eq!(text.lines().nth(1).unwrap().matches('>').count(), 2);
        assert!(!text.contains('|'));
        let svg = annular(3, "t").render(Style::Svg);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches(r#"stroke="white""#).count(), 0);
        let d = annular(3, "t");
        assert_eq!(d.positions()[1], vec![2, 0, 1]);
    }

    #[test]
    fn r_letters_are_expanded() {
        let d = annular(4, "r1");
        assert_eq!(d.rows.len(), 4);
        assert_eq!(*d.positions().last().unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn artin_words() {
        let w = ArtinWord::new(3, vec![1, -2]).unwrap();
        let text = Diagram::artin(&w).render(Style::Ascii);
        assert_eq!(text.lines().count(), 6);
        assert!(!text.contains('~'));
    }

    #[test]
    fn deterministic() {
        let d = annular(5, "b5 T r2 b1 B3");
        assert_eq!(d.render(Style::Svg), d.render(Style::Svg));
    }
}
