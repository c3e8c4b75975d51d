use gpe::gpe::{builtin, make_baker, GpeSystem, BUILTIN_SYSTEMS};
use gpe::join::{is_nested, join_sequence, levels_csv, perimeter_identity_holds, JoinCaps, JoinLevel};
use gpe::oracle::gpe_grid_itinerary_counts;
use gpe::{Cap, JoinError};

fn builtins() -> Vec<(&'static str, GpeSystem)> {
    BUILTIN_SYSTEMS
        .iter()
        .map(|(name, _)| (*name, builtin(name, &[]).unwrap()))
        .collect()
}

fn levels(g: &GpeSystem, n: usize) -> Vec<JoinLevel> {
    join_sequence(g, n, JoinCaps::default()).unwrap()
}

#[test]
fn counts_match_the_grid_oracle() {
    for (name, g) in builtins() {
        let joined: Vec<usize> = levels(&g, 4).iter().map(|l| l.atom_count()).collect();
        assert_eq!(joined, gpe_grid_itinerary_counts(&g, 4, 128), "{name}");
    }
}

#[test]
fn levels_tile_the_space_and_nest() {
    for (name, g) in builtins() {
        let lv = levels(&g, 5);
        let area = g.space().area();
        for l in &lv {
            assert_eq!(l.total_area(), area, "{name} level {}", l.n);
            assert!(perimeter_identity_holds(l, g.space()), "{name} level {}", l.n);
        }
        for w in lv.windows(2) {
            assert!(is_nested(&w[0], &w[1]), "{name} level {}", w[1].n);
            assert!(w[1].atom_count() >= w[0].atom_count());
        }
    }
}

#[test]
fn forward_maps_agree_with_orbits() {
    for (name, g) in builtins() {
        let lv = levels(&g, 4);
        for l in &lv {
            for c in &l.cells {
                let x = c.region.vertex_centroid();
                let orbit = g.evaluate(&x, l.n).unwrap();
                assert!(orbit.is_regular(), "{name}");
                assert_eq!(orbit.itinerary, c.itinerary, "{name}");
                assert_eq!(orbit.last(), &c.forward_map.apply(&x), "{name}");
            }
        }
    }
}

#[test]
fn cell_cap_keeps_completed_levels() {
    let caps = JoinCaps {
        max_cells: 300,
        ..JoinCaps::default()
    };
    match join_sequence(&make_baker(), 12, caps) {
        Err(JoinError::CapExceeded {
            cap,
            attempted,
            completed,
        }) => {
            assert_eq!(cap, Cap::Cells(300));
            assert_eq!(attempted, 9);
            assert_eq!(completed.len(), 8);
            assert!(levels_csv(&completed).lines().count() == 9);
        }
        other => panic!("expected a cap error, got {other:?}"),
    }
}

#[test]
fn joins_are_deterministic() {
    for (name, g) in builtins() {
        assert_eq!(levels_csv(&levels(&g, 5)), levels_csv(&levels(&g, 5)), "{name}");
    }
}
