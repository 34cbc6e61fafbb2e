fn main() {
    use prepot::grid::Grid;
    use prepot::models::{Model, ModelKind, ModelParams};
    use prepot::oracle::*;
    let m = Model::new(ModelKind::Coulomb, ModelParams::new(1.0, 1.0)).unwrap();
    for (xmax, pts) in [(40.0, 2001usize), (60.0, 12001), (60.0, 24001)] {
        let grid = Grid::new(1e-3, xmax, pts).unwrap();
        let op = discretize(&m, &grid).unwrap();
        let eigs = lowest_eigenvalues(&op, 3).unwrap();
        println!("xmax={xmax} pts={pts}: {:?}", eigs);
        println!("  errors vs [-1,-0.25,-1/9]: {:?}",
            eigs.iter().zip([-1.0, -0.25, -1.0/9.0]).map(|(e, x)| e - x).collect::<Vec<_>>());
    }
}
