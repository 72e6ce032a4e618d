//! Exact affine solving over Q and F_p, dense and sparse.

use separable::exactlin::{solve_affine, Eliminator, Feasibility, Field, Matrix};

fn main() -> separable::Result<()> {
    let q = Field::Rationals;
    let a = Matrix::from_ints(q, &[&[2, 1, 0], &[0, 3, 1]]);
    let b = [q.int(1), q.int(2)];
    match solve_affine(&a, &b)? {
        Feasibility::Feasible(s) => {
            let p: Vec<String> = s.particular.iter().map(|x| x.to_string()).collect();
            println!("over Q: particular [{}], kernel dimension {}", p.join(", "), s.kernel.len());
        }
        Feasibility::Infeasible(i) => println!("over Q: infeasible {i:?}"),
    }

    // x + y = 1 and x + y = 0 disagree in every field.
    let f2 = Field::Prime(2);
    let mut e = Eliminator::new(f2, 2);
    e.add(vec![(0, f2.one()), (1, f2.one())], f2.one());
    e.add(vec![(0, f2.one()), (1, f2.one())], f2.zero());
    match e.solve() {
        Feasibility::Infeasible(i) => println!("over F2: rank {} but augmented rank {}", i.rank, i.augmented_rank),
        Feasibility::Feasible(_) => unreachable!(),
    }

    let m = Matrix::from_ints(Field::Prime(3), &[&[1, 1], &[1, -2]]);
    println!("rank over F3 of {m}: {}", m.rank());
    Ok(())
}
