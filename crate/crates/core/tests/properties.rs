use pathguard::balanced::{split_balanced_with, FlipAt};
use pathguard::decompose::vertical_decompose;
use pathguard::format::{parse_polygon, write_polygon};
use pathguard::geom::{validate_polygon, Coord, DoubledPoint, OrthoPolygon};
use pathguard::guard::{guard_path_polygon, guard_path_polygon_with, part_polygon};
use pathguard::pixel::pixel_decompose;
use pathguard::visibility::{
    coverage_check, extremes_weakly_visible, is_rstar, r_visible2, sees_pixel,
};
use pathguard::{generate, split_balanced, GenConfig};
use proptest::prelude::*;

fn config() -> impl Strategy<Value = GenConfig> {
    (
        1usize..14,
        any::<u64>(),
        2i64..24,
        0.0f64..=1.0,
        any::<bool>(),
    )
        .prop_map(|(slabs, seed, range, wind, unbalanced)| {
            let unbalanced = unbalanced && slabs >= 3 && range >= 3;
            GenConfig {
                slabs,
                range,
                seed,
                wind_probability: wind,
                unbalanced,
            }
        })
}

fn polygon() -> impl Strategy<Value = OrthoPolygon> {
    config().prop_map(|c| generate(&c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn counting_formulas(cfg in config()) {
        let p = generate(&cfg).unwrap();
        let n = p.len();
        prop_assert_eq!(n, 2 * cfg.slabs + 2);
        prop_assert_eq!(p.reflex_count(), (n - 4) / 2);
        prop_assert_eq!(p.convex_count(), (n + 4) / 2);
        prop_assert_eq!(p.horizontal_edges().count(), n / 2);
        prop_assert_eq!(p.vertical_edges().count(), n / 2);
        prop_assert_eq!(vertical_decompose(&p).unwrap().len(), (n - 2) / 2);
    }

    #[test]
    fn validation_is_idempotent(p in polygon()) {
        let again = validate_polygon(p.vertices()).unwrap();
        prop_assert!(!again.was_reoriented());
        prop_assert_eq!(again.vertices(), p.vertices());
        let mut reversed = p.vertices().to_vec();
        reversed.reverse();
        let fixed = validate_polygon(&reversed).unwrap();
        prop_assert!(fixed.was_reoriented());
        prop_assert_eq!(fixed.vertices(), p.vertices());
    }

    #[test]
    fn text_round_trip(p in polygon()) {
        let text = write_polygon(p.vertices());
        prop_assert_eq!(parse_polygon(&text).unwrap(), p.vertices().to_vec());
    }

    #[test]
    fn slabs_tile_the_polygon(p in polygon()) {
        let vd = vertical_decompose(&p).unwrap();
        let area: i128 = vd.slabs().iter().map(|s| s.rect.area()).sum();
        prop_assert_eq!(area, p.area());
        let mut xs: Vec<Coord> = vd.seams.iter().map(|s| s.x).collect();
        xs.sort_unstable();
        xs.dedup();
        prop_assert_eq!(xs.len(), vd.seams.len());
        for (j, w) in vd.slabs().windows(2).enumerate() {
            prop_assert!(w[0].upper_y() == w[1].upper_y() || w[0].lower_y() == w[1].lower_y());
            prop_assert!(vd.seams[j].length() > 0);
        }
    }

    #[test]
    fn pixel_grid_bounds(p in polygon()) {
        let grid = pixel_decompose(&p);
        let m = (p.len() - 2) / 2;
        prop_assert!(grid.len() <= m * m);
        prop_assert_eq!(grid.total_area(), p.area());
    }

    #[test]
    fn visibility_is_symmetric(p in polygon(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let grid = pixel_decompose(&p);
        let pa = grid.pixel(a.index(grid.len())).rect.center2();
        let pb = grid.pixel(b.index(grid.len())).rect.center2();
        prop_assert_eq!(r_visible2(&grid, pa, pb).unwrap(), r_visible2(&grid, pb, pa).unwrap());
    }

    #[test]
    fn pixel_visibility_is_sound(p in polygon(), g in any::<prop::sample::Index>()) {
        // Seeing a pixel implies seeing its four quarter points, at doubled
        // scale on a refined grid.
        let grid = pixel_decompose(&p);
        let fine = pathguard::pixel::pixel_decompose_refined(&p, 4);
        let guard_pixel = grid.pixel(g.index(grid.len())).rect;
        let (gi, gj) = grid.fine_index(guard_pixel.center2()).unwrap();
        let guard4 = DoubledPoint::new(guard_pixel.center2().x2 * 4, guard_pixel.center2().y2 * 4);
        for id in 0..grid.len() {
            if !sees_pixel(&grid, gi, gj, id) {
                continue;
            }
            let r = grid.pixel(id).rect;
            for (fx, fy) in [(1, 1), (3, 1), (1, 3), (3, 3)] {
                let q = DoubledPoint::new(
                    2 * (4 * r.lo.x + fx * r.width()),
                    2 * (4 * r.lo.y + fy * r.height()),
                );
                prop_assert!(r_visible2(&fine, guard4, q).unwrap());
            }
        }
    }

    #[test]
    fn guards_cover_and_stay_in_corridors(p in polygon()) {
        let sol = guard_path_polygon(&p).unwrap();
        let grid = pixel_decompose(&p);
        prop_assert!(coverage_check(&grid, &sol.guards).is_complete());
        prop_assert_eq!(sol.guards.len(), sol.guard_number);
        for part in &sol.parts {
            prop_assert!(grid.contains_rect(&part.part.corridor));
            for pos in &part.positions {
                prop_assert!(part.part.corridor.contains(&pos.rect));
                prop_assert!(pos.rect.contains_doubled(pos.guard));
            }
            for (a, pa) in part.positions.iter().enumerate() {
                for pb in &part.positions[a + 1..] {
                    prop_assert!(!pa.rect.interiors_overlap(&pb.rect));
                }
            }
        }
    }

    #[test]
    fn single_position_parts_are_rstars(p in polygon()) {
        let vd = vertical_decompose(&p).unwrap();
        let sol = guard_path_polygon(&p).unwrap();
        for part in &sol.parts {
            let sub = part_polygon(&part.part, vd.slabs());
            prop_assert_eq!(part.positions.len() == 1, is_rstar(&pixel_decompose(&sub)));
        }
    }

    #[test]
    fn flipped_cuts_still_cover(p in polygon(), k in 0usize..4) {
        let vd = vertical_decompose(&p).unwrap();
        let cuts = split_balanced(&vd).cuts.len();
        prop_assume!(k < cuts);
        let split = split_balanced_with(&vd, &mut FlipAt(k));
        prop_assert_eq!(split.parts.iter().map(|p| p.len()).sum::<usize>(), vd.len());
        let sol = guard_path_polygon_with(&p, &mut FlipAt(k)).unwrap();
        prop_assert!(coverage_check(&pixel_decompose(&p), &sol.guards).is_complete());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// On orthoconvex inputs, mutual weak visibility of the extreme edges
    /// implies a single guard suffices.
    #[test]
    fn extreme_edges_imply_rstar(slabs in 1usize..5, seed in any::<u64>(), range in 2i64..6) {
        let p = generate(&GenConfig { range, ..GenConfig::new(slabs, seed) }).unwrap();
        prop_assume!(p.is_orthoconvex());
        let grid = pixel_decompose(&p);
        if extremes_weakly_visible(&grid) {
            prop_assert!(is_rstar(&grid));
        }
    }
}
