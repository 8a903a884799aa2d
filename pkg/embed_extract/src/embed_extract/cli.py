"""embed: JSONL corpus -> EMB1 vector file."""

from __future__ import annotations

import logging

import click

from .backends import ModelLoadError
from .corpus import read_units_jsonl
from .extract import embed_units


@click.command()
@click.option("--input", "input_path", required=True,
              help="JSONL corpus, one {\"label\", \"text\"} object per line.")
@click.option("--model", "model_id", required=True,
              help="Model id, or stub:<dim> for the offline backend.")
@click.option("--instruction", required=True,
              help="Prompt prefix for instruct-tuned models ('' for none).")
@click.option("--batch-size", type=int, default=32, show_default=True)
@click.option("--language", default=None, help="Corpus language hint.")
@click.option("--output", required=True, help="EMB1 vector file path.")
def main(input_path, model_id, instruction, batch_size, language, output):
    """Embed every unit and write the vectors with their trailer metadata."""
    logging.basicConfig(level=logging.WARNING, format="%(message)s")
    try:
        corpus = read_units_jsonl(input_path)
        corpus.language = language
        result = embed_units(corpus, model_id, instruction,
                             batch_size=batch_size)
        result.save(output)
    except (ValueError, ModelLoadError, OSError) as exc:
        raise click.ClickException(str(exc))
    click.echo(f"{len(result.labels)} units x {result.rows.shape[1]} dims "
               f"(truncated {result.metadata['n_truncated']}) -> {output}")


if __name__ == "__main__":
    main()
