use nlasso_wasm::{chain, sbm, segmentation};

#[test]
fn chain_defaults_give_first_four_nodes() {
    let d = chain(0.2, 1.0 / 200.0, 1000).unwrap();
    assert_eq!(d.cluster(), vec![1, 2, 3, 4]);
    assert_eq!(d.signal().len(), 100);
    assert_eq!(d.fiedler().len(), 100);
    assert!(d.contains_seed() && d.holds_injecting() && d.u_bound());
}

#[test]
fn chain_rejects_bad_parameters() {
    assert!(chain(0.0, 0.1, 10).is_err());
    assert!(chain(0.1, 0.1, 0).is_err());
}

#[test]
fn two_region_mask() {
    let pixels: Vec<u8> = (0..64).map(|k| if k % 8 < 4 { 40 } else { 200 }).collect();
    let mask = segmentation(8, 8, &pixels, &[1, 10, 19], 1.0 / 40.0, 1.0, 1000).unwrap();
    let want: Vec<u8> = (0..64).map(|k| if k % 8 < 4 { 255 } else { 0 }).collect();
    assert_eq!(mask, want);
    assert!(segmentation(8, 8, &pixels[..10], &[1], 0.1, 0.1, 10).is_err());
    assert!(segmentation(8, 8, &pixels, &[65], 0.1, 0.1, 10).is_err());
}

#[test]
fn sbm_run_is_reproducible() {
    let a = sbm(3, 200).unwrap();
    assert_eq!(a, sbm(3, 200).unwrap());
    assert_eq!(a.seeds().len(), 20);
    assert!(a.seeds().iter().all(|&s| (1..=100).contains(&s)));
    assert!((0.0..=1.0).contains(&a.accuracy()));
}
