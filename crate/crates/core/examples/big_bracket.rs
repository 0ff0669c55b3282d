//! The big bracket on T*ΠV: coordinate relations, a derived bracket and the
//! measured orientation signs.

use std::sync::Arc;

use bigbracket::frontend::parse_expression;
use bigbracket::graded_algebra::{derived, GeneratorTable};
use bigbracket::orientation::audit;

fn main() -> bigbracket::Result<()> {
    let table = Arc::new(GeneratorTable::standard(2, 2));
    let p = |s: &str| parse_expression(&table, s);

    for (a, b) in [("x1", "p1"), ("p1", "x1"), ("xi1", "th1"), ("th1", "xi1"), ("x1", "p2")] {
        println!("{{{a}, {b}}} = {}", p(a)?.bracket(&p(b)?));
    }

    let mu = p("p1*xi1 + p2*xi2")?;
    let f = p("x1^2*x2")?;
    println!("{{mu, f}} = {}", mu.bracket(&f));

    let (x, y) = (p("x2*th1")?, p("x1*th2")?);
    println!("{{{{X, mu}}, Y}} = {}", derived(&mu, &x, &y));

    let a = p("x1*th1*xi2 + p2")?;
    let bd = a.bidegree().expect("homogeneous");
    println!("bidegree of {a}: {bd}, shifted {}", bd.shifted());

    println!("{}", audit());
    Ok(())
}
