"""
The HTTP service. This is where we setup the app.
"""
import logging
import os
import urllib.parse
from typing import Any, Dict

import aiocache
from fastapi import FastAPI

from peierls.graph.executor import Workers
from peierls.routers import pipeline
from peierls.utils.settings import Settings

app = FastAPI(title="peierls", debug=bool(int(os.environ.get("DEBUG", 0))))

app.include_router(pipeline.router, tags=["pipeline"])


@app.on_event("startup")
def initialize_logging():
    """ Initialize the log level of the root logger """
    logging.getLogger().setLevel(Settings.log_level.upper())
    logging.info("Using settings: %s", Settings.json())


def cache_config(url_string: str) -> Dict[str, Any]:
    """ Translate a cache url such as memory:// or redis://host:6379/0 """
    url = urllib.parse.urlparse(url_string)
    config: Dict[str, Any] = dict(urllib.parse.parse_qsl(url.query))
    cache_class = aiocache.Cache.get_scheme_class(url.scheme)

    if url.path:
        config.update(cache_class.parse_uri_path(url.path))

    if url.hostname:
        config["endpoint"] = url.hostname

    if url.port:
        config["port"] = str(url.port)

    if url.password:
        config["password"] = url.password

    if cache_class == aiocache.Cache.REDIS:
        config["cache"] = "aiocache.RedisCache"
        config["serializer"] = {"class": "aiocache.serializers.PickleSerializer"}
    elif cache_class == aiocache.Cache.MEMORY:
        config["cache"] = "aiocache.SimpleMemoryCache"
        config["serializer"] = {"class": "aiocache.serializers.NullSerializer"}

    return config


@app.on_event("startup")
def initialize_caches():
    """ Initialize the stage output cache """
    aiocache.caches.set_config({"default": cache_config(Settings.cache_url)})


@app.on_event("startup")
def initialize_workers():
    """ Start the process pool running the stages """
    Workers.acquire()


@app.on_event("shutdown")
def shutdown_workers():
    """ Shut the process pool down """
    Workers.release()
