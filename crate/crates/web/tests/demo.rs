use hamsym_web::{construct_value, transitivity_value, zigzag_value};

#[test]
fn construct_lays_out_every_vertex() {
    let v = construct_value("prism 5").unwrap();
    assert_eq!(v["n"], 10);
    assert_eq!(v["edges"].as_array().unwrap().len(), 15);
    for p in v["positions"].as_array().unwrap() {
        let [x, y] = [p[0].as_f64().unwrap(), p[1].as_f64().unwrap()];
        assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
    }
    assert!(construct_value("prism").is_err());
}

#[test]
fn transitivity_report() {
    let v = transitivity_value("prism 7", 100_000).unwrap();
    assert_eq!(v["transitive"], true);
    assert_eq!(v["prediction"]["verdict"], "InH");
    let v = transitivity_value("prism 6", 100_000).unwrap();
    assert_eq!(v["transitive"], false);
    assert_eq!(v["representatives"].as_array().unwrap().len(), 2);
}

#[test]
fn zigzag_explorer() {
    let v = zigzag_value(6, 7, &[3, 2]).unwrap();
    assert_eq!(v["mu"], 25);
    assert_eq!(v["closed_form"], 25);
    assert_eq!(v["cycle"].as_array().unwrap().len(), 42);
    let big = zigzag_value(9, 9, &[7, 0, 3]).unwrap();
    assert_eq!(big["graph"]["n"], 81);
    assert!(zigzag_value(6, 6, &[1]).is_err());
}
