#!/usr/bin/env python3
"""Submit an experiment config to a running easense service and print the ranking."""
import argparse
import asyncio
import json
import logging

import websockets

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


async def submit(uri: str, config_path: str):
    with open(config_path, "r") as f:
        config = json.load(f)

    logger.info(f"Connecting to experiment service at {uri}")
    async with websockets.connect(uri, open_timeout=30, ping_interval=None) as websocket:
        logger.info(f"Submitting {config.get('algorithm')}/{config.get('method', 'morris')} experiment...")
        await websocket.send(json.dumps({"command": "run", "params": {"config": config}}))

        while True:
            result = json.loads(await websocket.recv())
            if result.get("type") == "heartbeat":
                continue
            break

        if result.get("error"):
            logger.error(f"Experiment failed: {result['error']}")
            return 1

        summary = result["result"]
        print("\nExperiment Results:")
        print(f"Store: {summary['output_dir']}")
        print(f"Cells run: {summary['executed_cells']} (resumed {summary['resumed_cells']})")
        print(f"Failed runs: {summary['failures']}")
        ranking = summary.get("ranking")
        if ranking:
            for position, name in enumerate(ranking["consolidated"], start=1):
                print(f"{position:2d}. {name} (Borda {ranking['borda'][name]})")
        return 0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("config", help="JSON experiment config")
    parser.add_argument("--uri", default="ws://localhost:8000/mcp")
    args = parser.parse_args()
    return asyncio.run(submit(args.uri, args.config))


if __name__ == "__main__":
    raise SystemExit(main())
