use grobsys::poly::Context;
use grobsys::parse::parse_poly;
use grobsys::tree::dispgb;
use grobsys::ideal::intersect;
use std::time::Instant;

fn main() {
    let ctx = Context::lex(&["s1", "c1", "s2", "c2"], &["r", "z", "l"]);
    let gens: Vec<_> = [
        "s1^2 + c1^2 - 1",
        "s2^2 + c2^2 - 1",
        "l*(s1*s2 - c1*c2) - c1 + r",
        "l*(s1*c2 + c1*s2) + s1 - z",
    ].iter().map(|t| parse_poly(&ctx, t).unwrap()).collect();
    let system = dispgb(&gens, &ctx).unwrap();
    let case = system.cases.iter().find(|c| c.label.to_string() == "[0,1,1,1]").unwrap();
    let g = &case.basis[2];
    eprintln!("g = {}", g);
    let mut gn = vec![g.clone()];
    gn.extend_from_slice(case.sigma.null_gens());
    let t0 = Instant::now();
    let h_g = intersect(&gens, &gn, &ctx);
    eprintln!("intersection: {} gens in {:?}", h_g.len(), t0.elapsed());
}
