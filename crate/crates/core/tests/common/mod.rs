#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use pytharr::exactla::{frac, rat, Rational, Vector};
use pytharr::gaingraph::{Edge, GainGraph};
use pytharr::Configuration;

/// Random small instance; gains sometimes put a few hyperplanes through a
/// common point or come from vertex potentials, so that central and balanced
/// sets actually occur.
pub fn random_triple(rng: &mut ChaCha8Rng, d: usize, max_pts: usize, max_edges: usize) -> (Configuration, GainGraph) {
    let n = rng.gen_range(2..=max_pts);
    let mut pts: Vec<Vector> = Vec::new();
    while pts.len() < n {
        let p = Vector((0..d).map(|_| frac(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect());
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let c = Configuration::new(d, labels.iter().cloned().zip(pts.clone()).collect()).unwrap();
    let m = rng.gen_range(1..=max_edges);
    let mode = rng.gen_range(0..3);
    let centre = Vector((0..d).map(|_| rat(rng.gen_range(-2..=2))).collect());
    let phi: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect();
    let mut edges = Vec::new();
    for i in 0..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let gain = match mode {
            // through `centre` for most edges
            0 if rng.gen_bool(0.7) => {
                let (qu, qv) = (&pts[u], &pts[v]);
                (qv - qu).scale(&rat(2)).dot(&centre) - qv.norm_sq() + qu.norm_sq()
            }
            1 if rng.gen_bool(0.8) => &phi[v] - &phi[u],
            _ => frac(rng.gen_range(-6..=6), rng.gen_range(1..=2)),
        };
        edges.push(Edge::new(&format!("e{i}"), &labels[u], &labels[v], gain));
    }
    let g = GainGraph::new(labels, edges).unwrap();
    (c, g)
}
