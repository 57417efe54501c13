from dotenv import load_dotenv
load_dotenv() # DENDRO_* settings may come from a .env file

from dendro import create_cli

cli = create_cli()

if __name__ == "__main__":
    cli()
