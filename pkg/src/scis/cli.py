"""Command-line umbrella: serve | segment | superpixels | bench."""

from __future__ import annotations

import sys
from pathlib import Path

import click
import numpy as np
from PIL import Image

from .oversegment import FhParams, SlicParams, felzenszwalb_segment, slic_segment
from .raster import load_image, load_label_map, save_label_map
from .session import SeedingError, apply_seed_mask, create_session, segment as run_segment
from .svm import SvmParams


@click.group()
def main():
    """Superpixel classification-based interactive segmentation."""


@main.command()
@click.option("--image", "image_path", required=True, type=click.Path(exists=True))
@click.option("--seeds", "seeds_path", required=True, type=click.Path(exists=True),
              help="8-bit gray seed mask; gray value = class id, 0 = unlabeled.")
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--k", default=24.0, show_default=True)
@click.option("--min-size", default=20, show_default=True)
@click.option("--sigma", default=0.8, show_default=True, help="Gaussian pre-smoothing std-dev.")
@click.option("--c", default=4.0, show_default=True)
@click.option("--gamma", default=4.0, show_default=True)
def segment(image_path, seeds_path, out_path, k, min_size, sigma, c, gamma):
    """One-shot segmentation from an image and a seed mask."""
    image = load_image(image_path)
    seeds = load_label_map(seeds_path)
    session = create_session(image, FhParams(k=k, min_size=min_size, smoothing_sigma=sigma),
                             SvmParams(c=c, gamma=gamma))
    apply_seed_mask(session, seeds)
    try:
        result = run_segment(session)
    except SeedingError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    save_label_map(result, out_path)
    click.echo(f"wrote {out_path} ({result.num_classes} classes, "
               f"{session.sp.num_superpixels} superpixels)")


@main.command()
@click.option("--image", "image_path", required=True, type=click.Path(exists=True))
@click.option("--algo", type=click.Choice(["fh", "slic"]), default="fh", show_default=True)
@click.option("--k", default=24.0, show_default=True)
@click.option("--min-size", default=20, show_default=True)
@click.option("--sigma", default=0.8, show_default=True)
@click.option("--avg-size", default=100, show_default=True)
@click.option("--compactness", default=10.0, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(),
              help="Boundary-overlay PNG for inspection.")
@click.option("--ids-out", type=click.Path(), default=None,
              help="Optional 16-bit superpixel-id raster.")
def superpixels(image_path, algo, k, min_size, sigma, avg_size, compactness, out_path, ids_out):
    """Over-segment an image and export the superpixels."""
    image = load_image(image_path)
    if algo == "fh":
        sp = felzenszwalb_segment(image, FhParams(k=k, min_size=min_size, smoothing_sigma=sigma))
    else:
        sp = slic_segment(image, SlicParams(avg_size=avg_size, compactness=compactness))
    overlay = image.pixels.copy()
    overlay[sp.boundary_mask()] = (255, 255, 0)
    Image.fromarray(overlay, mode="RGB").save(out_path)
    if ids_out:
        if sp.num_superpixels > 65535:
            raise click.ClickException("too many superpixels for a 16-bit raster")
        Image.fromarray(sp.assignment.astype(np.uint16)).save(ids_out)
    click.echo(f"{sp.num_superpixels} superpixels; wrote {out_path}")


@main.command()
@click.option("--dataset", "dataset_dir", required=True, type=click.Path(exists=True))
@click.option("--seeds", "seeds_dir", required=True, type=click.Path(exists=True))
@click.option("--radius", default=4, show_default=True, help="Fuzzy border radius.")
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--k", default=24.0, show_default=True)
@click.option("--min-size", default=20, show_default=True)
@click.option("--sigma", default=0.8, show_default=True)
@click.option("--c", default=4.0, show_default=True)
@click.option("--gamma", default=4.0, show_default=True)
def bench(dataset_dir, seeds_dir, radius, out_path, k, min_size, sigma, c, gamma):
    """Run the benchmark harness over a dataset directory."""
    from .evalkit import run_benchmark

    report = run_benchmark(dataset_dir, seeds_dir,
                           FhParams(k=k, min_size=min_size, smoothing_sigma=sigma),
                           SvmParams(c=c, gamma=gamma), radius=radius)
    Path(out_path).write_text(report.to_csv())
    for warning in report.warnings:
        click.echo(f"warning: {warning}", err=True)
    click.echo(f"wrote {out_path} ({len(report.rows)} rows)")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, envvar="SCIS_PORT")
@click.option("--max-dim", default=4096, show_default=True, envvar="SCIS_MAX_DIM",
              help="Largest accepted image side, in pixels.")
@click.option("--idle-timeout", default=None, type=float, envvar="SCIS_IDLE_TIMEOUT",
              help="Seconds before an untouched session expires.")
def serve(host, port, max_dim, idle_timeout):
    """Start the HTTP annotation service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(max_dim=max_dim, idle_timeout=idle_timeout), host=host, port=port)


if __name__ == "__main__":
    main()
