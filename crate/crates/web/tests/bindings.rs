use slicekit_web::{base4, cone_grid, knot_names, signature_plot};

#[test]
fn trefoil_signature_arcs() {
    let p = signature_plot("3_1").unwrap();
    assert_eq!(p["signature"], 2);
    let arcs = p["arcs"].as_array().unwrap();
    let values: Vec<i64> = arcs.iter().map(|a| a["value"].as_i64().unwrap()).collect();
    assert_eq!(values, vec![0, 2]);
    assert!((arcs[0]["from_deg"].as_f64().unwrap() - 0.0).abs() < 1e-9);
    assert!((arcs[1]["to_deg"].as_f64().unwrap() - 180.0).abs() < 1e-9);
    let jumps = p["jumps"].as_array().unwrap();
    assert_eq!(jumps.len(), 1);
    assert!((jumps[0]["deg_lo"].as_f64().unwrap() - 60.0).abs() < 1e-6);
}

#[test]
fn mirror_and_inline_codes() {
    let m = signature_plot("!3_1").unwrap();
    assert_eq!(m["signature"], -2);
    let dt = signature_plot("dt:4 6 8 2").unwrap();
    assert_eq!(dt["signature"], 0);
    assert_eq!(dt["name"], "dt:4 6 8 2");
    assert!(signature_plot("nosuch").is_err());
}

#[test]
fn cone_grid_marks_isotropic_cells() {
    let g = cone_grid("group=[5,5] gram=[[1/5,0],[0,1/5]]").unwrap();
    assert_eq!(g["rows"], 5);
    assert_eq!(g["cols"], 5);
    let marked: usize = g["cells"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap())
        .filter(|c| c["in_cone"] == true)
        .count();
    assert_eq!(marked, 9);
    assert_eq!(g["cone_size"], 9);
    assert_eq!(g["largest_subgroup"].as_array().unwrap().len(), 5);
    assert_eq!(g["metabolizer"]["order"], 5);

    let doubled = cone_grid("group=[21,21] gram=[[2/21,0],[0,2/21]]").unwrap();
    assert_eq!(doubled["cone_size"], 1);
    assert_eq!(doubled["theorem1_case"], "a");

    let cyclic = cone_grid("group=[9] gram=[[2/9]]").unwrap();
    assert_eq!(cyclic["cols"], 1);
    assert_eq!(cyclic["cone_size"], 3);

    assert!(cone_grid("group=[3,3,3] gram=[[1/3,0,0],[0,1/3,0],[0,0,1/3]]").is_err());
    assert!(cone_grid("group=[201,201] gram=[[1/201,0],[0,1/201]]").is_err());
}

#[test]
fn base4_realizations() {
    for d in [1u64, 5, 13, 21, 105, 1001] {
        let r = base4(d).unwrap();
        assert_eq!(r["at_one"], "1");
        assert_eq!(r["at_minus_one"], d.to_string(), "d = {d}");
    }
    for d in [3u64, 7, 35] {
        let r = base4(d).unwrap();
        assert_eq!(r["at_one"], "1");
        assert_eq!(r["at_minus_one"], format!("-{d}"));
    }
    assert!(base4(4).is_err());
}

#[test]
fn names_include_table_knots() {
    let names = knot_names();
    assert!(names.iter().any(|n| n == "3_1"));
    assert!(names.iter().any(|n| n == "12_1609"));
}
