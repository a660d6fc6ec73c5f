from logz.main import run

run()
