use flagzero::rootsys::{LieFamily, RootSystem};
use flagzero::torsion::{torsion_index_full_flag, TorsionConfig};

fn main() {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "F4".into());
    let family = LieFamily::from_letter(arg.chars().next().unwrap()).unwrap();
    let rank: usize = arg[1..].parse().unwrap();
    let rs = RootSystem::build(family, rank).unwrap();
    let r = torsion_index_full_flag(&rs, &TorsionConfig::default()).unwrap();
    println!(
        "tau({arg}) = {}  ranks = {:?}  cert = {}  [{} ms]",
        r.tau,
        &r.degree_ranks[..r.degree_ranks.len().min(8)],
        r.certificate.len(),
        r.elapsed_ms
    );
}
