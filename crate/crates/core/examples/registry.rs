use charmod::anomaly::{verify_all, IdentityId};

fn main() {
    let order: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let t = std::time::Instant::now();
    for r in verify_all(&IdentityId::ALL, order).unwrap() {
        println!("{:<16} {} {:>6}ms {}", r.id, r.status, r.millis, r.witness);
        for n in &r.notes {
            println!("    note: {n}");
        }
    }
    println!("total {:?}", t.elapsed());
}
