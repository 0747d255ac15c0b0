# Controladores - capa CLI (un módulo por grupo de subcomandos)
